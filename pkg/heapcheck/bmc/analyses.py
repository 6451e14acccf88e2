"""
analyses

Instance constructors for common questions about bounded programs

Every constructor returns a validated MCInstance. The `negate` option asks
the complementary question by negating the query part of the
post-condition.
"""

import dataclasses
import logging
import typing

import networkx as nx

from heapcheck.bmc.instance import (
	MCInstance, BmcResult, make_instance, with_program_vocabulary, primed_frame, bmc_solve
)
from heapcheck.bmc.rename import rename_primed, prime
from heapcheck.datalog.cardinality import CardinalitySystem
from heapcheck.datalog.clauses import Clause, DatalogProgram, universal_closure
from heapcheck.datalog.restrictions import bsr_at
from heapcheck.datalog.spec import SpecFormula, empty_spec
from heapcheck.errors import SpecError
from heapcheck.logic.formula import (
	Formula, X, Y, Const, Eq, Not, UnaryAtom, BinaryAtom, Implies, Forall, Exists,
	conj, disj
)
from heapcheck.logic.normalize import check_restricted
from heapcheck.logic.signature import NULL
from heapcheck.logic.structure import Structure
from heapcheck.modelfind.config import SearchConfig
from heapcheck.program.instrument import guarded_variable
from heapcheck.program.state import alloc_formula
from heapcheck.program.template import BoundedProgram


logger = logging.getLogger(__name__)


def _alloc_primed(bp: BoundedProgram, var: str) -> Formula:
	return alloc_formula([prime(t) for t in bp.decl.types], Const(prime(var)))


def _post(pre: SpecFormula, bp: BoundedProgram, matrix: Formula) -> SpecFormula:
	return empty_spec(primed_frame(with_program_vocabulary(pre, bp)), matrix)


def mk_dangling_instance(pre: SpecFormula, bp: BoundedProgram, x: str, negate: bool = False) -> MCInstance:
	"""Can `x` end up dangling or NULL? post = [∅] !alloc'(x')"""
	query = _alloc_primed(bp, x)
	matrix = query if negate else Not(query)
	return make_instance(pre, bp, _post(pre, bp, matrix), kind="allocated" if negate else "dangling")


def mk_alias_instance(pre: SpecFormula, bp: BoundedProgram, x: str, y: str, negate: bool = False) -> MCInstance:
	"""May `x` and `y` end up aliased? post = [∅] x' = y'"""
	query = Eq(Const(prime(x)), Const(prime(y)))
	matrix = Not(query) if negate else query
	return make_instance(pre, bp, _post(pre, bp, matrix), kind="not-alias" if negate else "alias")


def mk_must_alias_query(pre: SpecFormula, bp: BoundedProgram, x: str, y: str) -> MCInstance:
	"""Instance whose solutions refute must-aliasing of `x` and `y`"""
	inst = mk_alias_instance(pre, bp, x, y, negate=True)
	return dataclasses.replace(inst, kind="must-alias")


@dataclasses.dataclass
class MustAlias:
	"""Answer to the must-alias question, valid up to `bound`"""
	holds: bool
	bound: int
	result: BmcResult

	def to_string(self) -> str:
		if self.holds:
			return f"must-alias up to bound {self.bound}"
		return "not must-alias"


def must_alias(pre: SpecFormula, bp: BoundedProgram, x: str, y: str, cfg: SearchConfig) -> MustAlias:
	"""Do `x` and `y` alias after every execution from every pre-state within the bound?"""
	result = bmc_solve(mk_must_alias_query(pre, bp, x, y), cfg)
	return MustAlias(not result.sat, cfg.max_domain, result)


def mk_intersection_instance(
		pre: SpecFormula,
		bp: BoundedProgram,
		shape1: str,
		shape2: str,
		negate: bool = False
) -> MCInstance:
	"""Can the structures of `shape1` and `shape2` meet at a non-NULL node?

	post = [P1', P2'](φ' && exists u. shape1'(u) && shape2'(u) && u != NULL')
	"""
	sig = pre.signature
	for p in (shape1, shape2):
		if p not in sig.int_unary:
			raise SpecError(f"{p} is not defined by a program of the pre-condition.")
	if len(pre.privileged_in_use()) > 1:
		raise SpecError("At most one of the shape programs may be privileged in the pre-condition.")
	s1, s2 = prime(shape1), prime(shape2)
	meet = conj(UnaryAtom(s1, X), UnaryAtom(s2, X), Not(Eq(X, Const(prime(NULL)))))
	query = Forall(X, Not(meet)) if negate else Exists(X, meet)
	frame = rename_primed(with_program_vocabulary(pre, bp))
	post = dataclasses.replace(frame, matrix=conj(frame.matrix, query))
	return make_instance(pre, bp, post, kind="disjoint" if negate else "intersect")


@dataclasses.dataclass(frozen=True)
class LeakNames:
	"""Fresh symbols introduced by mk_leak_instance"""
	node: str
	edge: str
	reach_pre: str
	reach_post: str


def leak_names(sig) -> LeakNames:
	node = sig.fresh("c_a")
	sig = sig.extend(constants=[node])
	edge = sig.fresh("edge")
	sig = sig.extend(ext_binary={edge: False})
	reach_pre = sig.fresh("reach_pre")
	sig = sig.extend(ext_unary=[reach_pre])
	reach_post = sig.fresh("reach_post")
	return LeakNames(node, edge, reach_pre, reach_post)


def mk_leak_instance(pre: SpecFormula, bp: BoundedProgram) -> MCInstance:
	"""Can the program turn a cell that is free or reachable into allocated garbage?

	A fresh constant marks the cell. In the pre-state it is unallocated, or
	reachable from a variable along `edge` tuples, which are field edges,
	and it is not shared unless an old constant also names it. In the
	post-state it is allocated and the universal closure of the backward
	reachability program, with `reach_post'` chosen as a witness, shows
	that no variable reaches it.
	"""
	pre = with_program_vocabulary(pre, bp)
	sig = pre.signature
	names = leak_names(sig)
	fields = sorted(bp.decl.fields)
	types = sorted(bp.decl.types)
	node = Const(names.node)
	alloc = alloc_formula(types, X)

	reach = DatalogProgram("Q", (
		Clause(names.reach_pre, conj(alloc, Eq(X, node))),
		Clause(names.reach_pre, alloc, ((names.edge, names.reach_pre),)),
	))
	index = len(pre.programs)
	extended = sig.extend(
		ext_binary={names.edge: False}, constants=[names.node], owner={names.reach_pre: index}
	)
	on_fields = Forall(X, Forall(Y, Implies(
		BinaryAtom(names.edge, X, Y),
		disj(*(BinaryAtom(f, X, Y) for f in fields)),
	)))
	reached = disj(
		Not(alloc_formula(types, node)),
		*(UnaryAtom(names.reach_pre, Const(v)) for v in bp.variables),
	)
	matrix = conj(pre.matrix, on_fields, bsr_at(pre.programs, node, sig.constants), reached)
	leak_pre = SpecFormula(pre.programs + (reach,), pre.delta, matrix, extended, pre.witnesses)
	assert check_restricted(reached, extended), "Reachability literals must be constant literals."

	back = DatalogProgram("R", [Clause(names.reach_post, conj(alloc, Eq(X, node)))] + [
		Clause(names.reach_post, alloc, ((f, names.reach_post),)) for f in fields
	])
	rp = prime(names.reach_post)
	post_matrix = conj(
		rename_primed(universal_closure(back)),
		_alloc_primed(bp, names.node),
		*(Not(UnaryAtom(rp, Const(prime(v)))) for v in bp.variables),
	)
	post_sig = primed_frame(leak_pre).extend(ext_unary=[rp])
	post = SpecFormula((), CardinalitySystem(), post_matrix, post_sig, frozenset({rp}))
	return make_instance(leak_pre, bp, post, kind="leak")


def leaked_nodes(
		heap: Structure,
		types: typing.Iterable[str],
		fields: typing.Iterable[str],
		variables: typing.Iterable[str]
) -> typing.List[int]:
	"""Allocated nodes no variable reaches along field edges"""
	types = list(types)
	graph = nx.DiGraph()
	graph.add_nodes_from(heap.domain)
	for f in fields:
		graph.add_edges_from(heap.binary.get(f, ()))
	reached = set()
	for v in variables:
		d = heap.node_of(v)
		reached.add(d)
		reached |= nx.descendants(graph, d)
	allocated = set()
	for t in types:
		allocated |= heap.unary.get(t, frozenset())
	return sorted(allocated - reached)


def solution_leaks(result: BmcResult, bp: BoundedProgram) -> typing.List[int]:
	"""Leaked nodes of the post-state of a solved instance over `bp`"""
	post = result.solution.post_state.heap
	return leaked_nodes(
		post,
		[prime(t) for t in bp.decl.types],
		[prime(f) for f in bp.decl.fields],
		[prime(v) for v in bp.variables],
	)


def prefix_safety_instances(
		bp: BoundedProgram,
		pre: SpecFormula,
		include_entry: bool = False
) -> typing.List[typing.Tuple[int, str, MCInstance]]:
	"""One dangling-dereference instance per allocation check of an instrumented program

	For the check assume(alloc(x)) at index i > 0 the instance runs the
	prefix [0]..[i-1] and asks whether x can be unallocated there.

	Parameters:
	-----------
	bp: BoundedProgram
		Instrumented program.

	pre: SpecFormula

	include_entry: bool; optional
		Also emit a check at index 0, over the empty prefix. [Default: False]

	Returns:
	--------
	list of (i, x, MCInstance)
	"""
	out = []
	for i, a in enumerate(bp.actions):
		if i == 0 and not include_entry:
			continue
		var = guarded_variable(a, bp.decl.types)
		if var is None:
			continue
		inst = mk_dangling_instance(pre, bp.prefix(i), var)
		out.append((i, var, dataclasses.replace(inst, kind="prefix")))
	logger.debug("%d prefix-safety instances", len(out))
	return out
