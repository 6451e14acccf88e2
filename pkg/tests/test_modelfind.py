# Test bounded enumeration and the model finder

import functions
from assets import (
	LIST_SPEC, LIST_HEADED_SPEC, DLIST_SPEC, LRLISTS_SEQ_SPEC, LRLISTS_UNION_SPEC, TREES_SPEC,
	COMPANY_SPEC, CIRCULAR_LIST_SPEC, ALIAS_SPEC, TRUE_SPEC
)
from heapcheck.cli import load_spec, parse_spec
from heapcheck.datalog import spec_sat_on
from heapcheck.logic import Signature, NULL, X, Const, BinaryAtom, Exists, Structure
from heapcheck.modelfind import SearchConfig, StructureSpace, enumerate_structures, run_search, find_model
from heapcheck.modelfind.search import null_aliases


NEXT_SIG = Signature(ext_binary={"next": True}, constants=(NULL, "h"))
CORPUS_SPECS = (
	LIST_SPEC, LIST_HEADED_SPEC, DLIST_SPEC, LRLISTS_SEQ_SPEC, LRLISTS_UNION_SPEC, TREES_SPEC,
	COMPANY_SPEC, CIRCULAR_LIST_SPEC, ALIAS_SPEC, TRUE_SPEC
)


def test_small_counts():
	assert len(list(enumerate_structures(NEXT_SIG, 1))) == 1
	assert len(list(enumerate_structures(NEXT_SIG, 2))) == 6


def test_counts_against_isomorphism_classes():
	for n in (2, 3):
		found = list(enumerate_structures(NEXT_SIG, n))
		expected = functions.count_isomorphism_classes(functions.brute_force_structures(NEXT_SIG, n))
		assert len(found) == expected, f"Size {n}: enumerated {len(found)}, expected {expected} classes"
		assert len(set(found)) == len(found), "Enumeration repeated a structure."
		for M in found:
			assert M.node_of(NULL) == 0
			assert M.is_valid()


def test_filters():
	f = Exists(X, BinaryAtom("next", Const("h"), X))
	found = list(enumerate_structures(NEXT_SIG, 3, filters=[f]))
	assert found
	assert all(M.target("next", M.node_of("h")) is not None for M in found)
	assert len(found) < len(list(enumerate_structures(NEXT_SIG, 3)))


def test_exclusive_types():
	sig = Signature(ext_unary={"a", "b"}, constants=(NULL,))
	for M in enumerate_structures(sig, 3, exclusive={"a", "b"}):
		assert not M.unary["a"] & M.unary["b"]
		assert 0 not in M.unary["a"] | M.unary["b"], "NULL carries no type."


def test_edge_cap():
	sig = Signature(ext_binary={"r": False}, constants=(NULL,))
	capped = list(enumerate_structures(sig, 3, edge_cap=1))
	assert all(len(M.binary["r"]) <= 1 for M in capped)
	assert len(capped) < len(list(enumerate_structures(sig, 3)))
	assert len(list(enumerate_structures(sig, 3, null_axiom=False))) > len(list(enumerate_structures(sig, 3)))


def test_run_search():
	space = StructureSpace(Signature(ext_binary={"next": True}))
	outcome = run_search(space, lambda M: M if len(M.binary["next"]) >= 2 else None, SearchConfig(max_domain=4))
	assert outcome.found
	assert outcome.size == 3, "Two edges need two nodes besides NULL."
	assert outcome.examined > 0
	outcome = run_search(space, lambda M: None, SearchConfig(max_domain=2))
	assert not outcome.found
	assert outcome.bound == 2


def test_spare_cells():
	space = StructureSpace(NEXT_SIG, spare=2)
	for key, M in space.candidates(2):
		assert M.size == 4
		assert M.successors("next", 2) == set() and M.successors("next", 3) == set()


def test_corpus_models():
	cfg = SearchConfig(max_domain=3)
	for path in CORPUS_SPECS:
		spec = load_spec(path)
		result = find_model(spec, cfg)
		assert result.found, f"No model of {path} within {cfg.max_domain}"
		M = result.structure
		n = len(spec.signature.constants)
		assert M.size == n, f"{path}: expected one node per constant ({n}), got {M.size}"
		assert all(M.node_of(c) != 0 for c in spec.signature.constants if c != NULL), \
			f"{path}: a constant was placed on NULL"
		assert spec_sat_on(M, spec), f"{path}: the model fails re-verification"


def test_list_with_a_second_cell():
	with open(DLIST_SPEC) as f:
		text = f.read()
	spec = parse_spec(text + "assert exists u. next(h, u) && u != NULL;\n")
	result = find_model(spec, SearchConfig(max_domain=4))
	assert result.found
	M = result.structure
	assert M.size == 3, "h, its successor and NULL"
	h = M.node_of("h")
	t = M.target("next", h)
	assert t not in (None, 0, h)
	assert M.target("next", t) == 0
	assert M.target("prev", t) == h, "prev mirrors next between non-NULL cells"


def test_two_trees():
	spec = load_spec(TREES_SPEC)
	result = find_model(spec, SearchConfig(max_domain=4))
	assert result.found
	M = result.structure
	r1, r2 = M.node_of("r1"), M.node_of("r2")
	assert r1 != 0 and r2 != 0, "Both trees are non-empty."
	for left, right, root in (("left1", "right1", r1), ("left2", "right2", r2)):
		assert M.target(left, root) is not None and M.target(right, root) is not None
	assert spec_sat_on(M, spec)


def test_explicit_null_alias():
	result = find_model(parse_spec("const h;\nfun next;\nassert h = NULL;\n"), SearchConfig(max_domain=3))
	assert result.found
	assert result.structure.size == 2
	assert result.structure.node_of("h") == 0
	assert null_aliases(parse_spec("const h, g;\nassert NULL = g && h != NULL;\n").matrix) == {"g"}


def test_unsatisfiable():
	spec = parse_spec("const h;\nassert h != NULL && h = NULL;\n")
	result = find_model(spec, SearchConfig(max_domain=3))
	assert result.status == "exhausted"
	assert result.exhausted_at == 3
	assert result.structure is None
	assert result.examined == 0, "Equalities between constants prune every placement."


def test_parallel_is_deterministic():
	spec = load_spec(CIRCULAR_LIST_SPEC)
	serial = find_model(spec, SearchConfig(max_domain=3))
	parallel = find_model(spec, SearchConfig(max_domain=3, parallel_width=2))
	assert parallel.structure == serial.structure


def test_config():
	for kwargs in ({"max_domain": 0}, {"max_domain": 2, "min_domain": 3}, {"max_domain": 2, "spare_cells": -1}):
		try:
			SearchConfig(**kwargs)
		except AssertionError:
			pass
		else:
			raise AssertionError(f"Failed to catch an invalid configuration: {kwargs}")
	warnings = SearchConfig(max_domain=1).bound_warnings(3)
	assert len(warnings) == 1 and warnings[0].startswith("BoundTooSmall")
	assert not SearchConfig(max_domain=3).bound_warnings(3)
	assert SearchConfig(max_domain=4).first_size(3) == 3
	assert SearchConfig(max_domain=2).first_size(3) == 2
	assert SearchConfig(max_domain=4, min_domain=1).first_size(3) == 1
	result = find_model(load_spec(LRLISTS_SEQ_SPEC), SearchConfig(max_domain=1))
	assert result.status == "exhausted", "h1 and h2 cannot share the NULL node."
	assert result.warnings


def test_structure_from_enumeration_matches_dict():
	for M in enumerate_structures(NEXT_SIG, 2):
		assert Structure.from_dict(M.to_dict()) == M
