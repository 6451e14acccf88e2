"""
cardinality

Linear (in)equalities over the sizes of unary relations
"""

import dataclasses
import typing

import pandas as pd

from heapcheck.errors import UnknownSymbol
from heapcheck.logic.structure import Structure


CMP = {
	"<=": lambda a, b: a <= b,
	"=": lambda a, b: a == b,
	">=": lambda a, b: a >= b,
}


@dataclasses.dataclass(frozen=True)
class LinearConstraint:
	"""sum(coef * #pred for coef, pred in terms) cmp bound

	Terms may appear on both sides in the surface syntax; the parser moves
	everything to the left.
	"""
	terms: typing.Tuple[typing.Tuple[int, str], ...]
	cmp: str
	bound: int

	def __post_init__(self):
		assert self.cmp in CMP, f"Comparator must be one of {sorted(CMP)}; got {self.cmp!r}."
		object.__setattr__(self, "terms", tuple((int(c), p) for c, p in self.terms))

	@property
	def names(self) -> typing.FrozenSet[str]:
		return frozenset(p for _, p in self.terms)

	def lhs(self, counts: typing.Mapping[str, int]) -> int:
		return sum(c * counts[p] for c, p in self.terms)

	def holds(self, counts: typing.Mapping[str, int]) -> bool:
		return CMP[self.cmp](self.lhs(counts), self.bound)

	def to_string(self) -> str:
		parts = []
		for c, p in self.terms:
			sign = "-" if c < 0 else "+"
			mag = abs(c)
			term = f"#{p}" if mag == 1 else f"{mag} * #{p}"
			if not parts:
				parts.append(term if c > 0 else f"-{term}")
			else:
				parts.append(f"{sign} {term}")
		lhs = " ".join(parts) or "0"
		return f"{lhs} {self.cmp} {self.bound}"

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class CardinalitySystem:
	constraints: typing.Tuple[LinearConstraint, ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "constraints", tuple(self.constraints))

	@property
	def names(self) -> typing.FrozenSet[str]:
		out = frozenset()
		for c in self.constraints:
			out |= c.names
		return out

	def __bool__(self):
		return bool(self.constraints)

	def __len__(self):
		return len(self.constraints)

	def to_string(self) -> str:
		lines = ["cardinality {"]
		lines.extend(f"\t{c.to_string()};" for c in self.constraints)
		lines.append("}")
		return "\n".join(lines)

	def __str__(self):
		return self.to_string()


def valuation(Mp: Structure, names: typing.Iterable[str]) -> pd.Series:
	"""Size of each named unary relation of `Mp`"""
	counts = {}
	for p in sorted(names):
		if p not in Mp.unary:
			raise UnknownSymbol(p, "unary predicate")
		counts[p] = len(Mp.unary[p])
	return pd.Series(counts, name="cardinality", dtype="int64")


def eval_delta(Mp: Structure, delta: CardinalitySystem) -> bool:
	"""True when every (in)equality of `delta` holds for the relation sizes of `Mp`"""
	if not delta:
		return True
	counts = {}
	for p in delta.names:
		if p not in Mp.unary:
			raise UnknownSymbol(p, "unary predicate")
		counts[p] = len(Mp.unary[p])
	return all(c.holds(counts) for c in delta.constraints)
