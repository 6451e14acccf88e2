"""
formula

Abstract syntax of two-variable logic with counting quantifiers
"""

import dataclasses
import typing


VARIABLES = ("x", "y")
COMPARATORS = (">=", "=", "<=")


class Term:
	name: str


@dataclasses.dataclass(frozen=True)
class Var(Term):
	name: str

	def __post_init__(self):
		assert self.name in VARIABLES, f"Variables are {VARIABLES}; got {self.name!r}."


@dataclasses.dataclass(frozen=True)
class Const(Term):
	name: str


X = Var("x")
Y = Var("y")


def other(var: Var) -> Var:
	return Y if var == X else X


class Formula:
	"""Base class of every formula node"""
	def to_string(self, names: typing.Tuple[str, str] = None) -> str:
		return to_string(self, names)

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class Truth(Formula):
	value: bool


TRUE = Truth(True)
FALSE = Truth(False)


@dataclasses.dataclass(frozen=True)
class UnaryAtom(Formula):
	pred: str
	term: Term


@dataclasses.dataclass(frozen=True)
class BinaryAtom(Formula):
	pred: str
	left: Term
	right: Term


@dataclasses.dataclass(frozen=True)
class Eq(Formula):
	left: Term
	right: Term


@dataclasses.dataclass(frozen=True)
class Not(Formula):
	body: Formula


@dataclasses.dataclass(frozen=True)
class And(Formula):
	args: typing.Tuple[Formula, ...]


@dataclasses.dataclass(frozen=True)
class Or(Formula):
	args: typing.Tuple[Formula, ...]


@dataclasses.dataclass(frozen=True)
class Implies(Formula):
	left: Formula
	right: Formula


@dataclasses.dataclass(frozen=True)
class Iff(Formula):
	left: Formula
	right: Formula


@dataclasses.dataclass(frozen=True)
class Forall(Formula):
	var: Var
	body: Formula


@dataclasses.dataclass(frozen=True)
class Exists(Formula):
	var: Var
	body: Formula


@dataclasses.dataclass(frozen=True)
class Count(Formula):
	"""Counting quantifier: at least, exactly or at most `k` witnesses"""
	cmp: str
	k: int
	var: Var
	body: Formula

	def __post_init__(self):
		assert self.cmp in COMPARATORS, f"Comparator must be one of {COMPARATORS}; got {self.cmp!r}."
		assert self.k >= 0, f"Counting bound must be non-negative; got {self.k}."


ATOMS = (Truth, UnaryAtom, BinaryAtom, Eq)
QUANTIFIERS = (Forall, Exists, Count)


def conj(*args: Formula) -> Formula:
	"""Flattened conjunction; TRUE for no arguments"""
	flat = []
	for a in args:
		if isinstance(a, And):
			flat.extend(a.args)
		elif a == TRUE:
			continue
		elif a == FALSE:
			return FALSE
		else:
			flat.append(a)
	if not flat:
		return TRUE
	if len(flat) == 1:
		return flat[0]
	return And(tuple(flat))


def disj(*args: Formula) -> Formula:
	"""Flattened disjunction; FALSE for no arguments"""
	flat = []
	for a in args:
		if isinstance(a, Or):
			flat.extend(a.args)
		elif a == FALSE:
			continue
		elif a == TRUE:
			return TRUE
		else:
			flat.append(a)
	if not flat:
		return FALSE
	if len(flat) == 1:
		return flat[0]
	return Or(tuple(flat))


def children(f: Formula) -> typing.Tuple[Formula, ...]:
	if isinstance(f, Not):
		return (f.body,)
	if isinstance(f, (And, Or)):
		return f.args
	if isinstance(f, (Implies, Iff)):
		return (f.left, f.right)
	if isinstance(f, QUANTIFIERS):
		return (f.body,)
	return ()


def walk(f: Formula) -> typing.Iterator[Formula]:
	"""Pre-order traversal of every subformula"""
	stack = [f]
	while stack:
		g = stack.pop()
		yield g
		stack.extend(reversed(children(g)))


def terms(f: Formula) -> typing.Iterator[Term]:
	for g in walk(f):
		if isinstance(g, UnaryAtom):
			yield g.term
		elif isinstance(g, (BinaryAtom, Eq)):
			yield g.left
			yield g.right


def predicates(f: Formula) -> typing.FrozenSet[str]:
	"""Every predicate name mentioned in `f`"""
	return frozenset(g.pred for g in walk(f) if isinstance(g, (UnaryAtom, BinaryAtom)))


def constants(f: Formula) -> typing.FrozenSet[str]:
	return frozenset(t.name for t in terms(f) if isinstance(t, Const))


def free_vars(f: Formula) -> typing.FrozenSet[Var]:
	if isinstance(f, Truth):
		return frozenset()
	if isinstance(f, UnaryAtom):
		return frozenset(t for t in (f.term,) if isinstance(t, Var))
	if isinstance(f, (BinaryAtom, Eq)):
		return frozenset(t for t in (f.left, f.right) if isinstance(t, Var))
	if isinstance(f, QUANTIFIERS):
		return free_vars(f.body) - {f.var}
	out = frozenset()
	for c in children(f):
		out |= free_vars(c)
	return out


def is_quantifier_free(f: Formula) -> bool:
	return not any(isinstance(g, QUANTIFIERS) for g in walk(f))


def map_formula(
		f: Formula,
		pred: typing.Callable[[str], str] = None,
		const: typing.Callable[[str], str] = None,
) -> Formula:
	"""Rebuild `f` with predicate and constant names passed through the given maps"""
	pred = pred or (lambda n: n)
	const = const or (lambda n: n)

	def term(t):
		return Const(const(t.name)) if isinstance(t, Const) else t

	def go(g):
		if isinstance(g, Truth):
			return g
		if isinstance(g, UnaryAtom):
			return UnaryAtom(pred(g.pred), term(g.term))
		if isinstance(g, BinaryAtom):
			return BinaryAtom(pred(g.pred), term(g.left), term(g.right))
		if isinstance(g, Eq):
			return Eq(term(g.left), term(g.right))
		if isinstance(g, Not):
			return Not(go(g.body))
		if isinstance(g, And):
			return And(tuple(go(a) for a in g.args))
		if isinstance(g, Or):
			return Or(tuple(go(a) for a in g.args))
		if isinstance(g, Implies):
			return Implies(go(g.left), go(g.right))
		if isinstance(g, Iff):
			return Iff(go(g.left), go(g.right))
		if isinstance(g, Forall):
			return Forall(g.var, go(g.body))
		if isinstance(g, Exists):
			return Exists(g.var, go(g.body))
		if isinstance(g, Count):
			return Count(g.cmp, g.k, g.var, go(g.body))
		raise TypeError(f"Not a formula: {g!r}")

	return go(f)


def substitute(f: Formula, var: Var, t: Term) -> Formula:
	"""Replace free occurrences of `var` by the constant term `t`"""
	assert isinstance(t, Const), "Only constants may be substituted."

	def term(s):
		return t if s == var else s

	def go(g):
		if isinstance(g, Truth):
			return g
		if isinstance(g, UnaryAtom):
			return UnaryAtom(g.pred, term(g.term))
		if isinstance(g, BinaryAtom):
			return BinaryAtom(g.pred, term(g.left), term(g.right))
		if isinstance(g, Eq):
			return Eq(term(g.left), term(g.right))
		if isinstance(g, QUANTIFIERS) and g.var == var:
			return g
		if isinstance(g, Not):
			return Not(go(g.body))
		if isinstance(g, And):
			return And(tuple(go(a) for a in g.args))
		if isinstance(g, Or):
			return Or(tuple(go(a) for a in g.args))
		if isinstance(g, Implies):
			return Implies(go(g.left), go(g.right))
		if isinstance(g, Iff):
			return Iff(go(g.left), go(g.right))
		if isinstance(g, Forall):
			return Forall(g.var, go(g.body))
		if isinstance(g, Exists):
			return Exists(g.var, go(g.body))
		return Count(g.cmp, g.k, g.var, go(g.body))

	return go(f)


# Printing

def display_names(f: Formula) -> typing.Tuple[str, str]:
	"""Surface names for x and y that collide with no symbol of `f`"""
	taken = constants(f) | predicates(f)
	i = 0
	while True:
		suffix = str(i) if i else ""
		pair = ("u" + suffix, "v" + suffix)
		if not taken & set(pair):
			return pair
		i += 1


def _is_simple(f: Formula) -> bool:
	if isinstance(f, ATOMS):
		return True
	return isinstance(f, Not) and isinstance(f.body, ATOMS)


def to_string(f: Formula, names: typing.Tuple[str, str] = None) -> str:
	"""Surface syntax of `f`; non-atomic operands are always parenthesized

	Parameters:
	-----------
	f: Formula
		Formula to print.

	names: tuple of (str, str); optional
		Surface names for the variables x and y.
		[Default: first free pair of u/v, u1/v1, ...]
	"""
	if names is None:
		names = display_names(f)
	rename = dict(zip(VARIABLES, names))

	def term(t):
		return rename[t.name] if isinstance(t, Var) else t.name

	def operand(g):
		s = go(g)
		return s if _is_simple(g) else f"({s})"

	def go(g):
		if isinstance(g, Truth):
			return "true" if g.value else "false"
		if isinstance(g, UnaryAtom):
			return f"{g.pred}({term(g.term)})"
		if isinstance(g, BinaryAtom):
			return f"{g.pred}({term(g.left)}, {term(g.right)})"
		if isinstance(g, Eq):
			return f"{term(g.left)} = {term(g.right)}"
		if isinstance(g, Not):
			if isinstance(g.body, Eq):
				return f"{term(g.body.left)} != {term(g.body.right)}"
			return "!" + operand(g.body)
		if isinstance(g, And):
			return " && ".join(operand(a) for a in g.args)
		if isinstance(g, Or):
			return " || ".join(operand(a) for a in g.args)
		if isinstance(g, Implies):
			return f"{operand(g.left)} -> {operand(g.right)}"
		if isinstance(g, Iff):
			return f"{operand(g.left)} <-> {operand(g.right)}"
		if isinstance(g, Forall):
			return f"forall {rename[g.var.name]}. {go(g.body)}"
		if isinstance(g, Exists):
			return f"exists {rename[g.var.name]}. {go(g.body)}"
		if isinstance(g, Count):
			return f"exists{g.cmp}{g.k} {rename[g.var.name]}. {go(g.body)}"
		raise TypeError(f"Not a formula: {g!r}")

	return go(f)
