"""
restrictions

Bounded-sharing (bsr) and bounded-intersection (bir) restrictions
"""

import dataclasses
import itertools
import typing

from heapcheck.datalog.clauses import DatalogProgram
from heapcheck.logic.formula import (
	Formula, X, Y, UnaryAtom, BinaryAtom, Eq, Not, And, Implies, Forall, Exists,
	Count, Const, conj
)
from heapcheck.logic.normalize import const_guard
from heapcheck.logic.structure import Structure


@dataclasses.dataclass(frozen=True)
class BsrWitness:
	"""Node `v` with incoming edges s1(u1, v) and s2(u2, v); s2 is None when both use s1"""
	program: str
	s1: str
	s2: typing.Optional[str]
	u1: int
	u2: int
	v: int

	def to_string(self) -> str:
		s2 = self.s2 or self.s1
		return f"{self.program}: {self.s1}({self.u1}, {self.v}) and {s2}({self.u2}, {self.v}) share non-constant node {self.v}"


@dataclasses.dataclass(frozen=True)
class BirWitness:
	program: str
	p: str
	q: str
	u: int

	def to_string(self) -> str:
		return f"{self.program}: {self.p} and {self.q} intersect at non-constant node {self.u}"


@dataclasses.dataclass(frozen=True)
class Verdict:
	witness: typing.Union[BsrWitness, BirWitness, None] = None

	@property
	def ok(self) -> bool:
		return self.witness is None

	def __bool__(self):
		return self.ok

	def to_string(self) -> str:
		return "ok" if self.ok else self.witness.to_string()


OK = Verdict()


def check_bsr(Mp: Structure, progs: typing.Sequence[DatalogProgram]) -> Verdict:
	"""Every non-constant node has at most one incoming edge over each Σ(P)

	Parameters:
	-----------
	Mp: Structure
		Extended structure.

	progs: list of DatalogProgram

	Returns:
	--------
	Verdict
		Carries the first witness found, in program, node and predicate order.
	"""
	consts = Mp.constant_nodes
	for P in progs:
		sig = sorted(P.edge_sig())
		if not sig:
			continue
		for v in Mp.domain:
			if v in consts:
				continue
			incoming = [(s, u) for s in sig for u in sorted(Mp.predecessors(s, v))]
			if len(incoming) < 2:
				continue
			(s1, u1), (s2, u2) = incoming[:2]
			if s1 == s2:
				return Verdict(BsrWitness(P.name, s1, None, u1, u2, v))
			return Verdict(BsrWitness(P.name, s1, s2, u1, u2, v))
	return OK


def check_bir(Mp: Structure, progs: typing.Sequence[DatalogProgram]) -> Verdict:
	"""No non-constant node satisfies two intensional predicates of one program"""
	consts = Mp.constant_nodes
	for P in progs:
		for p, q in itertools.combinations(sorted(P.intensional()), 2):
			shared = (Mp.unary.get(p, frozenset()) & Mp.unary.get(q, frozenset())) - consts
			if shared:
				return Verdict(BirWitness(P.name, p, q, min(shared)))
	return OK


def bsr_sentences(progs: typing.Sequence[DatalogProgram], constants: typing.Iterable[str]) -> Formula:
	"""The bounded-sharing restriction as a two-variable sentence

	Sharing through one predicate becomes "a non-constant node has at most
	one s-predecessor"; sharing through two distinct predicates becomes "a
	node with both an s1- and an s2-predecessor is a constant".
	"""
	constants = tuple(constants)
	parts = []
	for P in progs:
		sig = sorted(P.edge_sig())
		for s in sig:
			parts.append(Forall(Y, Implies(
				Not(const_guard(constants, Y)),
				Count("<=", 1, X, BinaryAtom(s, X, Y)),
			)))
		for s1, s2 in itertools.permutations(sig, 2):
			parts.append(Forall(Y, Implies(
				And((Exists(X, BinaryAtom(s1, X, Y)), Exists(X, BinaryAtom(s2, X, Y)))),
				const_guard(constants, Y),
			)))
	return conj(*parts)


def bir_sentences(progs: typing.Sequence[DatalogProgram], constants: typing.Iterable[str]) -> Formula:
	"""forall u. p(u) and q(u) -> const(u), for distinct p, q of one program"""
	constants = tuple(constants)
	parts = []
	for P in progs:
		for p, q in itertools.permutations(sorted(P.intensional()), 2):
			parts.append(Forall(X, Implies(
				And((UnaryAtom(p, X), UnaryAtom(q, X))),
				const_guard(constants, X),
			)))
	return conj(*parts)


def bsr_at(progs: typing.Sequence[DatalogProgram], node: Const, constants: typing.Iterable[str]) -> Formula:
	"""The bounded-sharing restriction instantiated at one constant

	Used for a constant that is not itself exempt: `node` may only be
	shared when it coincides with one of `constants`.
	"""
	constants = tuple(constants)
	guard = const_guard(constants, node)
	parts = []
	for P in progs:
		sig = sorted(P.edge_sig())
		for s in sig:
			parts.append(Forall(X, Forall(Y, Implies(
				And((BinaryAtom(s, X, node), BinaryAtom(s, Y, node), Not(Eq(X, Y)))),
				guard,
			))))
		for s1, s2 in itertools.permutations(sig, 2):
			parts.append(Forall(X, Forall(Y, Implies(
				And((BinaryAtom(s1, X, node), BinaryAtom(s2, Y, node))),
				guard,
			))))
	return conj(*parts)
