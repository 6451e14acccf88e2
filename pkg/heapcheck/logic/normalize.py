"""
normalize

Negation normal form and the restricted-occurrence check
"""

import dataclasses
import typing

from heapcheck.logic.formula import (
	Formula, Truth, TRUE, FALSE, UnaryAtom, Eq, Not, And, Or, Implies, Iff,
	Forall, Exists, Count, Const, Term, ATOMS, VARIABLES, disj, walk
)
from heapcheck.logic.signature import Signature


def nnf(f: Formula) -> Formula:
	"""Equivalent formula with negation applied only to atoms

	Counting quantifiers are dualized: not at-least-k becomes at-most-(k-1),
	not at-most-k becomes at-least-(k+1), and not exactly-k splits into the
	two strict sides.
	"""
	return _pos(f)


def _pos(f: Formula) -> Formula:
	if isinstance(f, ATOMS):
		return f
	if isinstance(f, Not):
		return _neg(f.body)
	if isinstance(f, And):
		return And(tuple(_pos(a) for a in f.args))
	if isinstance(f, Or):
		return Or(tuple(_pos(a) for a in f.args))
	if isinstance(f, Implies):
		return Or((_neg(f.left), _pos(f.right)))
	if isinstance(f, Iff):
		return Or((
			And((_pos(f.left), _pos(f.right))),
			And((_neg(f.left), _neg(f.right))),
		))
	if isinstance(f, Forall):
		return Forall(f.var, _pos(f.body))
	if isinstance(f, Exists):
		return Exists(f.var, _pos(f.body))
	if isinstance(f, Count):
		return Count(f.cmp, f.k, f.var, _pos(f.body))
	raise TypeError(f"Not a formula: {f!r}")


def _neg(f: Formula) -> Formula:
	if isinstance(f, Truth):
		return FALSE if f.value else TRUE
	if isinstance(f, ATOMS):
		return Not(f)
	if isinstance(f, Not):
		return _pos(f.body)
	if isinstance(f, And):
		return Or(tuple(_neg(a) for a in f.args))
	if isinstance(f, Or):
		return And(tuple(_neg(a) for a in f.args))
	if isinstance(f, Implies):
		return And((_pos(f.left), _neg(f.right)))
	if isinstance(f, Iff):
		return Or((
			And((_pos(f.left), _neg(f.right))),
			And((_neg(f.left), _pos(f.right))),
		))
	if isinstance(f, Forall):
		return Exists(f.var, _neg(f.body))
	if isinstance(f, Exists):
		return Forall(f.var, _neg(f.body))
	if isinstance(f, Count):
		body = _pos(f.body)
		if f.cmp == ">=":
			if f.k == 0:
				return FALSE
			return Count("<=", f.k - 1, f.var, body)
		if f.cmp == "<=":
			return Count(">=", f.k + 1, f.var, body)
		if f.k == 0:
			return Count(">=", 1, f.var, body)
		return Or((Count("<=", f.k - 1, f.var, body), Count(">=", f.k + 1, f.var, body)))
	raise TypeError(f"Not a formula: {f!r}")


def is_universal(f: Formula) -> bool:
	"""True when the negation normal form of `f` has only universal quantifiers"""
	return not any(isinstance(g, (Exists, Count)) for g in walk(nnf(f)))


def conjuncts(f: Formula) -> typing.List[Formula]:
	"""Top-level conjuncts of `f`, nested conjunctions flattened"""
	if isinstance(f, And):
		out = []
		for a in f.args:
			out.extend(conjuncts(a))
		return out
	if f == TRUE:
		return []
	return [f]


def const_guard(sig: typing.Union[Signature, typing.Iterable[str]], var: Term) -> Formula:
	"""Disjunction of `var = c` over every constant c

	Parameters:
	-----------
	sig: Signature, or iterable of constant names

	var: Term
		Usually a variable.

	Returns:
	--------
	Formula
		FALSE when there are no constants.
	"""
	names = sig.constants if isinstance(sig, Signature) else tuple(sig)
	return disj(*(Eq(var, Const(c)) for c in names))


@dataclasses.dataclass(frozen=True)
class Violation:
	"""An intensional literal occurring unrestricted"""
	pred: str
	term: str
	positive: bool
	path: typing.Tuple[str, ...]
	owner: int

	def to_string(self) -> str:
		sign = "" if self.positive else "!"
		where = " / ".join(self.path) or "top level"
		return f"{sign}{self.pred}({self.term}) under [{where}] (program {self.owner})"

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class RestrictionVerdict:
	violations: typing.Tuple[Violation, ...] = ()

	@property
	def ok(self) -> bool:
		return not self.violations

	@property
	def owners(self) -> typing.FrozenSet[int]:
		return frozenset(v.owner for v in self.violations)

	def __bool__(self):
		return self.ok


def _label(q, names) -> str:
	v = names[0] if q.var.name == "x" else names[1]
	if isinstance(q, Forall):
		return f"forall {v}"
	if isinstance(q, Exists):
		return f"exists {v}"
	return f"exists{q.cmp}{q.k} {v}"


def check_restricted(
		f: Formula,
		sig: Signature,
		privileged: typing.AbstractSet[int] = frozenset()
) -> RestrictionVerdict:
	"""Find intensional literals of non-privileged programs that occur unrestricted

	A literal over an intensional predicate is restricted when it is applied
	to a constant, or it is positive and every enclosing quantifier is
	existential (plain or at-least counting), or it is negative and every
	enclosing quantifier is universal. At-most and exactly counting
	quantifiers are neither.

	Parameters:
	-----------
	f: Formula

	sig: Signature
		Supplies the intensional predicates and their owners.

	privileged: set of int
		Indices of the programs allowed unrestricted occurrences.

	Returns:
	--------
	RestrictionVerdict
		Truthy when no violation was found.
	"""
	assert len(privileged) <= 2, f"At most two programs may be privileged; got {sorted(privileged)}."
	names = ("u", "v")
	found = []

	def literal(atom: UnaryAtom, positive: bool, path, existential: bool, universal: bool):
		if atom.pred not in sig.int_unary:
			return
		owner = sig.owner[atom.pred]
		if owner in privileged or isinstance(atom.term, Const):
			return
		if positive and existential:
			return
		if not positive and universal:
			return
		term = atom.term.name if isinstance(atom.term, Const) else names[VARIABLES.index(atom.term.name)]
		found.append(Violation(atom.pred, term, positive, tuple(path), owner))

	def go(g: Formula, path, existential: bool, universal: bool):
		if isinstance(g, UnaryAtom):
			literal(g, True, path, existential, universal)
		elif isinstance(g, Not):
			if isinstance(g.body, UnaryAtom):
				literal(g.body, False, path, existential, universal)
		elif isinstance(g, (And, Or)):
			for a in g.args:
				go(a, path, existential, universal)
		elif isinstance(g, Forall):
			go(g.body, path + [_label(g, names)], False, universal)
		elif isinstance(g, Exists):
			go(g.body, path + [_label(g, names)], existential, False)
		elif isinstance(g, Count):
			go(g.body, path + [_label(g, names)], existential and g.cmp == ">=", False)

	go(nnf(f), [], True, True)
	return RestrictionVerdict(tuple(found))


