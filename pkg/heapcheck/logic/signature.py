"""
signature

Extensional and intensional vocabularies
"""

import dataclasses
import typing

from heapcheck.errors import SpecError


NULL = "NULL"
PRIME = "'"


def is_primed(name: str) -> bool:
	return name.endswith(PRIME)


@dataclasses.dataclass(frozen=True)
class Signature:
	"""Vocabulary of a heap specification

	Parameters:
	-----------
	ext_unary: frozenset of str
		Unary extensional predicates (types, labels, witnesses).

	ext_binary: dict of {str: bool}
		Binary extensional predicates, mapped to their functionality flag.

	constants: tuple of str
		Constant names in declaration order. NULL comes first.

	int_unary: frozenset of str
		Intensional (Datalog-defined) unary predicates.

	owner: dict of {str: int}
		Index of the Datalog program defining each intensional predicate.
	"""
	ext_unary: typing.FrozenSet[str] = frozenset()
	ext_binary: typing.Mapping[str, bool] = dataclasses.field(default_factory=dict)
	constants: typing.Tuple[str, ...] = (NULL,)
	int_unary: typing.FrozenSet[str] = frozenset()
	owner: typing.Mapping[str, int] = dataclasses.field(default_factory=dict)

	def __post_init__(self):
		object.__setattr__(self, "ext_unary", frozenset(self.ext_unary))
		object.__setattr__(self, "int_unary", frozenset(self.int_unary))
		object.__setattr__(self, "ext_binary", dict(self.ext_binary))
		object.__setattr__(self, "owner", dict(self.owner))
		constants = tuple(self.constants)
		if NULL not in constants:
			constants = (NULL,) + constants
		elif constants[0] != NULL:
			constants = (NULL,) + tuple(c for c in constants if c != NULL)
		object.__setattr__(self, "constants", constants)
		self.validate()

	def validate(self):
		"""Check the disjointness and ownership invariants"""
		if len(set(self.constants)) != len(self.constants):
			raise SpecError(f"Duplicate constants in {self.constants}.")
		ext = self.ext_unary | set(self.ext_binary)
		clash = (ext & self.int_unary) | (set(self.constants) & (ext | self.int_unary))
		if self.ext_unary & set(self.ext_binary):
			clash |= self.ext_unary & set(self.ext_binary)
		if clash:
			raise SpecError(f"Names declared twice with different roles: {sorted(clash)}")
		unowned = self.int_unary - set(self.owner)
		if unowned:
			raise SpecError(f"Intensional predicates without a defining program: {sorted(unowned)}")
		stray = set(self.owner) - self.int_unary
		if stray:
			raise SpecError(f"Owner entries for non-intensional names: {sorted(stray)}")

	@property
	def unary(self) -> typing.FrozenSet[str]:
		return self.ext_unary | self.int_unary

	@property
	def functional(self) -> typing.FrozenSet[str]:
		return frozenset(r for r, f in self.ext_binary.items() if f)

	@property
	def relations(self) -> typing.FrozenSet[str]:
		"""Non-functional binary predicates"""
		return frozenset(r for r, f in self.ext_binary.items() if not f)

	@property
	def names(self) -> typing.FrozenSet[str]:
		return self.unary | set(self.ext_binary) | set(self.constants)

	def is_intensional(self, name: str) -> bool:
		return name in self.int_unary

	def arity(self, name: str) -> typing.Optional[int]:
		if name in self.ext_unary or name in self.int_unary:
			return 1
		if name in self.ext_binary:
			return 2
		if name in self.constants:
			return 0
		return None

	def merge(self, other: "Signature") -> "Signature":
		"""Union of two vocabularies that agree on every shared name"""
		for r in set(self.ext_binary) & set(other.ext_binary):
			if self.ext_binary[r] != other.ext_binary[r]:
				raise SpecError(f"Binary predicate {r!r} is declared both functional and relational.")
		for p in set(self.owner) & set(other.owner):
			if self.owner[p] != other.owner[p]:
				raise SpecError(f"Intensional predicate {p!r} is owned by two programs.")
		constants = self.constants + tuple(c for c in other.constants if c not in self.constants)
		return Signature(
			ext_unary=self.ext_unary | other.ext_unary,
			ext_binary={**self.ext_binary, **other.ext_binary},
			constants=constants,
			int_unary=self.int_unary | other.int_unary,
			owner={**self.owner, **other.owner},
		)

	def extend(
			self,
			ext_unary: typing.Iterable[str] = (),
			ext_binary: typing.Mapping[str, bool] = None,
			constants: typing.Iterable[str] = (),
			owner: typing.Mapping[str, int] = None
	) -> "Signature":
		owner = dict(owner or {})
		other = Signature(
			ext_unary=frozenset(ext_unary),
			ext_binary=dict(ext_binary or {}),
			constants=tuple(constants),
			int_unary=frozenset(owner),
			owner=owner,
		)
		return self.merge(other)

	def fresh(self, base: str) -> str:
		"""A name not yet used in this signature, derived from `base`"""
		if base not in self.names:
			return base
		i = 1
		while f"{base}{i}" in self.names:
			i += 1
		return f"{base}{i}"
