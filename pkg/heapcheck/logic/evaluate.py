"""
evaluate

Truth of formulas in finite structures

`evaluate` is the ordinary two-valued semantics. `evaluate3` works on a
partially built structure: atoms over open predicates whose first argument
is not yet decided are unknown, and connectives follow the
strong Kleene tables. On a complete structure both agree.
"""

import typing

from heapcheck.errors import UnknownSymbol
from heapcheck.logic.formula import (
	Formula, Truth, UnaryAtom, BinaryAtom, Eq, Not, And, Or, Implies, Iff,
	Forall, Exists, Count, Var, VARIABLES
)


Env = typing.Tuple[typing.Optional[int], typing.Optional[int]]
EMPTY_ENV = (None, None)


def _to_env(env) -> Env:
	if env is None:
		return EMPTY_ENV
	if isinstance(env, tuple):
		return env
	unknown = set(env) - set(VARIABLES)
	if unknown:
		raise UnknownSymbol(sorted(unknown)[0], "variable")
	return env.get("x"), env.get("y")


class _Evaluator:
	__slots__ = ("M", "frontier", "horizon", "open")

	def __init__(self, M, frontier: int, open_names: typing.AbstractSet[str], horizon: int = None):
		self.M = M
		self.frontier = frontier
		self.horizon = M.size if horizon is None else horizon
		self.open = open_names

	def node(self, t, env: Env) -> int:
		if isinstance(t, Var):
			d = env[0] if t.name == "x" else env[1]
			if d is None:
				raise UnknownSymbol(t.name, "free variable")
			return d
		try:
			return self.M.constants[t.name]
		except KeyError:
			raise UnknownSymbol(t.name, "constant") from None

	def ev(self, f: Formula, env: Env) -> typing.Optional[bool]:
		if isinstance(f, UnaryAtom):
			d = self.node(f.term, env)
			if f.pred in self.open and self.frontier <= d < self.horizon:
				return None
			try:
				return d in self.M.unary[f.pred]
			except KeyError:
				raise UnknownSymbol(f.pred, "unary predicate") from None
		if isinstance(f, BinaryAtom):
			a = self.node(f.left, env)
			if f.pred in self.open and self.frontier <= a < self.horizon:
				return None
			b = self.node(f.right, env)
			try:
				return (a, b) in self.M.binary[f.pred]
			except KeyError:
				raise UnknownSymbol(f.pred, "binary predicate") from None
		if isinstance(f, Eq):
			return self.node(f.left, env) == self.node(f.right, env)
		if isinstance(f, Not):
			v = self.ev(f.body, env)
			return None if v is None else not v
		if isinstance(f, And):
			return self.conjunction(f.args, env)
		if isinstance(f, Or):
			return self.disjunction(f.args, env)
		if isinstance(f, Implies):
			left = self.ev(f.left, env)
			if left is False:
				return True
			right = self.ev(f.right, env)
			if right is True:
				return True
			if left is None or right is None:
				return None
			return False
		if isinstance(f, Iff):
			left = self.ev(f.left, env)
			if left is None:
				return None
			right = self.ev(f.right, env)
			if right is None:
				return None
			return left == right
		if isinstance(f, Forall):
			unknown = False
			for d in range(self.M.size):
				v = self.ev(f.body, _bind(env, f.var, d))
				if v is False:
					return False
				if v is None:
					unknown = True
			return None if unknown else True
		if isinstance(f, Exists):
			unknown = False
			for d in range(self.M.size):
				v = self.ev(f.body, _bind(env, f.var, d))
				if v is True:
					return True
				if v is None:
					unknown = True
			return None if unknown else False
		if isinstance(f, Count):
			return self.count(f, env)
		if isinstance(f, Truth):
			return f.value
		raise TypeError(f"Not a formula: {f!r}")

	def conjunction(self, args, env):
		unknown = False
		for a in args:
			v = self.ev(a, env)
			if v is False:
				return False
			if v is None:
				unknown = True
		return None if unknown else True

	def disjunction(self, args, env):
		unknown = False
		for a in args:
			v = self.ev(a, env)
			if v is True:
				return True
			if v is None:
				unknown = True
		return None if unknown else False

	def count(self, f: Count, env: Env) -> typing.Optional[bool]:
		k = f.k
		sure = 0
		maybe = 0
		for d in range(self.M.size):
			v = self.ev(f.body, _bind(env, f.var, d))
			if v is True:
				sure += 1
				if f.cmp == ">=" and sure >= k:
					return True
				if f.cmp != ">=" and sure > k:
					return False
			elif v is None:
				maybe += 1
		if f.cmp == ">=":
			if sure >= k:
				return True
			return False if sure + maybe < k else None
		if f.cmp == "<=":
			return True if sure + maybe <= k else None
		if sure + maybe < k:
			return False
		if maybe == 0:
			return sure == k
		return None


def _bind(env: Env, var: Var, d: int) -> Env:
	if var.name == "x":
		return d, env[1]
	return env[0], d


def evaluate(M, f: Formula, env=None) -> bool:
	"""Truth value of `f` in `M`

	Parameters:
	-----------
	M: Structure
		Complete structure interpreting every name of `f`.

	f: Formula
		Formula whose free variables are bound by `env`.

	env: dict of {str: int}; optional
		Values of the free variables x and y.
		[Default: no free variables]

	Returns:
	--------
	bool
	"""
	v = _Evaluator(M, M.size, frozenset()).ev(f, _to_env(env))
	assert v is not None
	return v


def evaluate3(
		M,
		f: Formula,
		env=None,
		frontier: int = None,
		open_names: typing.AbstractSet[str] = frozenset(),
		horizon: int = None
) -> typing.Optional[bool]:
	"""Kleene truth value of `f` in a partially decided structure

	An atom over an open predicate is unknown when its first argument lies
	in [frontier, horizon).

	Parameters:
	-----------
	M: Structure-like
		Anything with `size`, `constants`, `unary` and `binary` attributes.

	f: Formula

	env: dict of {str: int}; optional

	frontier: int; optional
		Nodes below the frontier have all their atoms decided.
		[Default: M.size, i.e. fully decided]

	open_names: set of str; optional
		Predicates still being built. Atoms over other predicates are
		always decided.

	horizon: int; optional
		Nodes at or beyond the horizon are decided as well.
		[Default: M.size]

	Returns:
	--------
	True, False, or None when the value depends on undecided atoms.
	"""
	if frontier is None:
		frontier = M.size
	return _Evaluator(M, frontier, frozenset(open_names), horizon).ev(f, _to_env(env))
