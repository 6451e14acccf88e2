"""
state

Program states: heaps whose constants include the program variables
"""

import dataclasses
import typing

from heapcheck.logic.formula import Formula, Term, UnaryAtom, disj
from heapcheck.logic.structure import Structure


def alloc_formula(types: typing.Iterable[str], term: Term) -> Formula:
	"""alloc(term): the disjunction of t(term) over the types"""
	types = sorted(types)
	assert types, "alloc needs at least one type."
	return disj(*(UnaryAtom(t, term) for t in types))


@dataclasses.dataclass(frozen=True)
class State:
	"""A heap together with the set of type predicates

	A node is allocated exactly when one of the types holds of it.
	"""
	heap: Structure
	types: typing.FrozenSet[str]

	def __post_init__(self):
		object.__setattr__(self, "types", frozenset(self.types))

	def node(self, var: str) -> int:
		return self.heap.node_of(var)

	def type_of(self, d: int) -> typing.Optional[str]:
		for t in sorted(self.types):
			if d in self.heap.unary.get(t, ()):
				return t
		return None

	def allocated(self, d: int) -> bool:
		return self.type_of(d) is not None

	def allocated_nodes(self) -> typing.FrozenSet[int]:
		out = frozenset()
		for t in self.types:
			out |= self.heap.unary.get(t, frozenset())
		return out

	def unallocated_nodes(self) -> typing.List[int]:
		"""Nodes New may reuse, in node order"""
		null = self.heap.null
		used = self.allocated_nodes()
		return [d for d in self.heap.domain if d != null and d not in used]

	def problems(self, null_axiom: bool = True) -> typing.List[str]:
		out = self.heap.problems(null_axiom)
		for d in self.heap.domain:
			labels = [t for t in self.types if d in self.heap.unary.get(t, ())]
			if len(labels) > 1:
				out.append(f"node {d} carries several types: {sorted(labels)}")
		if self.allocated(self.heap.null):
			out.append("NULL is allocated")
		return out

	def assert_valid(self, null_axiom: bool = True):
		problems = self.problems(null_axiom)
		assert not problems, "Invalid state: " + "; ".join(problems)

	def digest(self) -> str:
		return self.heap.digest()

	def to_string(self) -> str:
		return self.heap.to_string()

	def __str__(self):
		return self.to_string()
