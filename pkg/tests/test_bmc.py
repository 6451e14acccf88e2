# Test model-checking instances, the analyses and the bounded solver

import functions
from assets import (
	LIST_SPEC, LRLISTS_SEQ_SPEC, TREES_SPEC, CIRCULAR_LIST_SPEC, LIST_REACHABLE_SPEC, ALIAS_SPEC, TRUE_SPEC,
	REPLACE_PROG, LEAK_NEW_PROG, LIST_EMPTY_PROG, ALIAS_PROG, ALIAS_COPY_PROG, ALIAS_INST, COPY_DIFFERS_INST
)
from heapcheck.bmc import (
	prime, rename_primed, make_instance, with_program_vocabulary, bmc_solve, sat_instance,
	mk_dangling_instance, mk_alias_instance, must_alias, mk_intersection_instance, mk_leak_instance,
	leak_names, solution_leaks, prefix_safety_instances, prefix_sweep, prefix_range, SWEEP_COLUMNS
)
from heapcheck.cli import load_spec, load_program, load_instance, parse_spec
from heapcheck.errors import AlreadyPrimed, PrivilegeBudgetExceeded, SpecError
from heapcheck.logic import NULL
from heapcheck.modelfind import SearchConfig
from heapcheck.program import TemplateDecl, BoundedProgram, Assign, instrument


CIRCULAR = load_spec(CIRCULAR_LIST_SPEC)
REPLACE = instrument(load_program(REPLACE_PROG))
LRLISTS_DECL = TemplateDecl({"cell"}, {"left": {"cell": "cell"}, "right": {"cell": "cell"}})
KEEP_H1 = BoundedProgram(LRLISTS_DECL, ("h1",), (Assign("h1", "h1"),))
PREFIX_CHECKS = [(2, "c"), (4, "c"), (7, "c"), (9, "c"), (11, "pc"), (13, "nc")]


def test_priming():
	assert prime("next") == "next'"
	try:
		prime("next'")
	except AlreadyPrimed:
		pass
	else:
		raise AssertionError("Failed to catch a name primed twice.")
	M = rename_primed(functions.list_and_cycle())
	assert M.constants == {"NULL'": 0}
	assert M.binary["next'"] == set(functions.LIST_AND_CYCLE_NEXT)
	assert M.functional == {"next'"}
	try:
		rename_primed(3)
	except TypeError:
		pass
	else:
		raise AssertionError("Failed to catch an object that cannot be renamed.")


def test_dangling_pointer():
	inst = mk_dangling_instance(CIRCULAR, REPLACE.prefix(11), "pc")
	assert inst.kind == "dangling"
	result = bmc_solve(inst, SearchConfig(max_domain=4, spare_cells=1))
	assert result.sat, f"pc dangles after disposing c; got {result.status}"
	sol = result.solution
	sol.validate(inst)
	heap = sol.pre_state.heap
	assert heap.size == 3
	assert heap.constants == {NULL: 0, "c": 1, "nc": 0, "pc": 0}
	assert heap.unary["cl_node"] == {1}
	assert heap.binary["next"] == {(1, 1)} and heap.binary["prev"] == {(1, 1)}
	assert sol.spare == (2,)
	assert sol.trace[6].choice == 2, "The new cell comes from the spare node."
	assert "(cell 2)" in sol.to_string()
	assert mk_dangling_instance(CIRCULAR, REPLACE.prefix(11), "pc", negate=True).kind == "allocated"


def test_prefix_instances():
	instances = prefix_safety_instances(REPLACE, CIRCULAR)
	assert [(i, x) for i, x, _ in instances] == PREFIX_CHECKS
	assert all(inst.kind == "prefix" for _, _, inst in instances)
	assert all(len(inst.bp.actions) == i for i, _, inst in instances)
	assert [i for i, _, _ in prefix_safety_instances(REPLACE, CIRCULAR, include_entry=True)][0] == 0
	assert prefix_range(0) == "empty"
	assert prefix_range(11) == "[0]-[10]"


def test_safe_prefixes():
	cfg = SearchConfig(max_domain=6, spare_cells=2) if functions.SLOW else SearchConfig(max_domain=3, spare_cells=1)
	for i, x, inst in prefix_safety_instances(REPLACE, CIRCULAR):
		if i == 11:
			continue
		result = bmc_solve(inst, cfg)
		assert result.status == "exhausted", f"{x} cannot dangle before [{i}]; got {result.status}"
		assert result.exhausted_at == cfg.max_domain


def test_prefix_sweep():
	df = prefix_sweep(REPLACE, CIRCULAR, SearchConfig(max_domain=3, spare_cells=1))
	assert list(df.columns) == SWEEP_COLUMNS
	assert df.index.name == "check"
	assert df.index.tolist() == [i for i, _ in PREFIX_CHECKS]
	assert df["target"].tolist() == [x for _, x in PREFIX_CHECKS]
	assert df.loc[11, "status"] == "sat"
	assert df.loc[11, "pre_size"] == 3
	assert df.loc[2, "range"] == "[0]-[1]"
	others = df.drop(index=11)
	assert (others["status"] == "exhausted").all()
	assert others["pre_size"].isna().all()
	assert str(df["pre_size"].dtype) == "Int64"


def test_leak():
	bp = load_program(LEAK_NEW_PROG)
	inst = mk_leak_instance(load_spec(TRUE_SPEC), bp)
	assert inst.kind == "leak"
	names = leak_names(with_program_vocabulary(load_spec(TRUE_SPEC), bp).signature)
	assert (names.node, names.edge, names.reach_pre, names.reach_post) == ("c_a", "edge", "reach_pre", "reach_post")
	assert [P.name for P in inst.pre.programs] == ["Q"]
	assert inst.post.witnesses == {"reach_post'"}
	result = bmc_solve(inst, SearchConfig(max_domain=3))
	assert result.sat, "The fresh cell is forgotten."
	assert result.solution.pre_state.heap.size == 2
	leaks = solution_leaks(result, bp)
	assert leaks == [1]
	post = result.solution.post_state.heap
	assert leaks == functions.unreachable_allocated(post, ["t'"], ["next'"], ["x'"])


def test_no_leak():
	bp = load_program(LIST_EMPTY_PROG)
	inst = mk_leak_instance(load_spec(LIST_REACHABLE_SPEC), bp)
	result = bmc_solve(inst, SearchConfig(max_domain=5 if functions.SLOW else 4))
	assert result.status == "exhausted", "Every cell stays on the list."


def test_alias():
	pre = load_spec(ALIAS_SPEC)
	bp = instrument(load_program(ALIAS_PROG))
	cfg = SearchConfig(max_domain=3)
	inst = mk_alias_instance(pre, bp, "x", "y")
	assert inst.kind == "alias"
	result = bmc_solve(inst, cfg)
	assert result.sat
	post = result.solution.post_state.heap
	assert post.node_of("x'") == post.node_of("y'")
	assert mk_alias_instance(pre, bp, "x", "y", negate=True).kind == "not-alias"
	answer = must_alias(pre, bp, "x", "y", cfg)
	assert not answer.holds
	assert answer.to_string() == "not must-alias"
	answer = must_alias(pre, instrument(load_program(ALIAS_COPY_PROG)), "x", "y", cfg)
	assert answer.holds
	assert answer.bound == 3
	assert answer.result.kind == "must-alias"


def test_instance_files():
	cfg = SearchConfig(max_domain=3)
	assert bmc_solve(load_instance(ALIAS_INST).instance(), cfg).sat
	result = bmc_solve(load_instance(COPY_DIFFERS_INST).instance(), cfg)
	assert result.status == "exhausted"


def test_intersection():
	pre = load_spec(LRLISTS_SEQ_SPEC)
	inst = mk_intersection_instance(pre, KEEP_H1, "llist", "rlist")
	assert inst.kind == "intersect"
	result = bmc_solve(inst, SearchConfig(max_domain=3))
	assert result.sat, "Two lists over distinct fields may meet."
	assert mk_intersection_instance(pre, KEEP_H1, "llist", "rlist", negate=True).kind == "disjoint"
	try:
		mk_intersection_instance(pre, KEEP_H1, "llist", "left")
	except SpecError:
		pass
	else:
		raise AssertionError("Failed to catch a shape that no program defines.")


def test_intersection_needs_a_free_privilege():
	with open(LRLISTS_SEQ_SPEC) as f:
		text = f.read()
	pre = parse_spec(text + "assert forall u. llist(u) || rlist(u) || u = NULL;\n")
	assert len(pre.privileged_in_use()) == 2
	try:
		mk_intersection_instance(pre, KEEP_H1, "llist", "rlist")
	except SpecError:
		pass
	else:
		raise AssertionError("Failed to catch two privileged shape programs.")


def test_privilege_budget():
	trees = load_spec(TREES_SPEC)
	bp = BoundedProgram(TemplateDecl({"cell"}), ("r1",), (Assign("r1", "r1"),))
	post = rename_primed(with_program_vocabulary(trees, bp))
	try:
		make_instance(trees, bp, post)
	except PrivilegeBudgetExceeded:
		pass
	else:
		raise AssertionError("Failed to catch four privileged programs.")


def test_unprimed_post():
	pre = load_spec(ALIAS_SPEC)
	bp = load_program(ALIAS_COPY_PROG)
	try:
		make_instance(pre, bp, pre)
	except SpecError:
		pass
	else:
		raise AssertionError("Failed to catch a post-condition over unprimed names.")


def test_sat_instance():
	inst = sat_instance(load_spec(LIST_SPEC))
	assert inst.kind == "sat"
	assert inst.bp.variables == ("x",)
	result = bmc_solve(inst, SearchConfig(max_domain=2))
	assert result.sat
	assert result.solution.pre_state.heap.size == 2, "The search starts with a node for h."
	unsat = parse_spec("const h;\nassert h != NULL && h = NULL;\n")
	assert bmc_solve(sat_instance(unsat), SearchConfig(max_domain=2)).status == "exhausted"
