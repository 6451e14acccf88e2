"""
structure

Finite relational structures (heaps)
"""

import hashlib
import json
import typing

import pandas as pd

from heapcheck.errors import UnknownSymbol
from heapcheck.logic.signature import NULL


Pair = typing.Tuple[int, int]


class Structure:
	"""A finite heap: nodes 0..size-1 with constants, unary and binary relations

	Structures are immutable; the `with_*` methods return modified copies.

	Parameters:
	-----------
	size: int
		Number of nodes.

	constants: dict of {str: int}
		Node of every constant. Must contain NULL.

	unary: dict of {str: iterable of int}
		Extension of every interpreted unary predicate.

	binary: dict of {str: iterable of (int, int)}
		Extension of every interpreted binary predicate.

	functional: iterable of str; optional
		Names of the binary predicates that must be partial functions.
		[Default: none]
	"""
	__slots__ = ("size", "constants", "unary", "binary", "functional", "_succ", "_pred", "_key")

	def __init__(
			self,
			size: int,
			constants: typing.Mapping[str, int],
			unary: typing.Mapping[str, typing.Iterable[int]] = None,
			binary: typing.Mapping[str, typing.Iterable[Pair]] = None,
			functional: typing.Iterable[str] = ()
	):
		assert size >= 1, f"A structure needs at least the NULL node; got size {size}."
		self.size = size
		self.constants = dict(constants)
		self.unary = {p: frozenset(v) for p, v in (unary or {}).items()}
		self.binary = {r: frozenset((a, b) for a, b in v) for r, v in (binary or {}).items()}
		self.functional = frozenset(functional)
		self._succ = None
		self._pred = None
		self._key = None

	@property
	def domain(self) -> range:
		return range(self.size)

	@property
	def null(self) -> int:
		return self.node_of(NULL)

	def node_of(self, const: str) -> int:
		try:
			return self.constants[const]
		except KeyError:
			raise UnknownSymbol(const, "constant") from None

	def holds_unary(self, pred: str, d: int) -> bool:
		try:
			return d in self.unary[pred]
		except KeyError:
			raise UnknownSymbol(pred, "unary predicate") from None

	def holds_binary(self, pred: str, a: int, b: int) -> bool:
		try:
			return (a, b) in self.binary[pred]
		except KeyError:
			raise UnknownSymbol(pred, "binary predicate") from None

	def _index(self):
		succ = {r: {} for r in self.binary}
		pred = {r: {} for r in self.binary}
		for r, pairs in self.binary.items():
			for a, b in pairs:
				succ[r].setdefault(a, set()).add(b)
				pred[r].setdefault(b, set()).add(a)
		self._succ = succ
		self._pred = pred

	def successors(self, rel: str, a: int) -> typing.AbstractSet[int]:
		if self._succ is None:
			self._index()
		if rel not in self._succ:
			raise UnknownSymbol(rel, "binary predicate")
		return self._succ[rel].get(a, frozenset())

	def predecessors(self, rel: str, b: int) -> typing.AbstractSet[int]:
		if self._pred is None:
			self._index()
		if rel not in self._pred:
			raise UnknownSymbol(rel, "binary predicate")
		return self._pred[rel].get(b, frozenset())

	def target(self, rel: str, a: int) -> typing.Optional[int]:
		"""Value of a functional binary predicate at `a`, None when unset"""
		succ = self.successors(rel, a)
		assert len(succ) <= 1, f"{rel} has {len(succ)} targets at node {a}."
		return next(iter(succ), None)

	def constants_at(self, d: int) -> typing.List[str]:
		return [c for c, v in self.constants.items() if v == d]

	@property
	def constant_nodes(self) -> typing.FrozenSet[int]:
		return frozenset(self.constants.values())

	# Copies

	def replace(self, size=None, constants=None, unary=None, binary=None, functional=None) -> "Structure":
		return Structure(
			size=self.size if size is None else size,
			constants=self.constants if constants is None else constants,
			unary=self.unary if unary is None else unary,
			binary=self.binary if binary is None else binary,
			functional=self.functional if functional is None else functional,
		)

	def with_constant(self, const: str, d: int) -> "Structure":
		assert 0 <= d < self.size, f"Node {d} is outside the domain."
		constants = dict(self.constants)
		constants[const] = d
		return self.replace(constants=constants)

	def with_unary(self, pred: str, nodes: typing.Iterable[int]) -> "Structure":
		unary = dict(self.unary)
		unary[pred] = frozenset(nodes)
		return self.replace(unary=unary)

	def with_binary(self, rel: str, pairs: typing.Iterable[Pair]) -> "Structure":
		binary = dict(self.binary)
		binary[rel] = frozenset(pairs)
		return self.replace(binary=binary)

	def with_spare(self, k: int) -> "Structure":
		"""Append `k` isolated nodes carrying no constant, label or edge"""
		if not k:
			return self
		return self.replace(size=self.size + k)

	def relabel(self, perm: typing.Sequence[int]) -> "Structure":
		"""Isomorphic copy with node `d` renamed to `perm[d]`"""
		assert sorted(perm) == list(self.domain), "Relabeling must permute the domain."
		return Structure(
			size=self.size,
			constants={c: perm[d] for c, d in self.constants.items()},
			unary={p: {perm[d] for d in v} for p, v in self.unary.items()},
			binary={r: {(perm[a], perm[b]) for a, b in v} for r, v in self.binary.items()},
			functional=self.functional,
		)

	# Validation

	def problems(self, null_axiom: bool = True) -> typing.List[str]:
		"""Violated structure invariants, empty when valid"""
		out = []
		if NULL not in self.constants:
			out.append("NULL is not interpreted")
		for c, d in self.constants.items():
			if not 0 <= d < self.size:
				out.append(f"constant {c} points outside the domain")
		for p, v in self.unary.items():
			if any(not 0 <= d < self.size for d in v):
				out.append(f"unary {p} mentions nodes outside the domain")
		for r, v in self.binary.items():
			if any(not (0 <= a < self.size and 0 <= b < self.size) for a, b in v):
				out.append(f"binary {r} mentions nodes outside the domain")
		for r in sorted(self.functional):
			if r not in self.binary:
				continue
			sources = [a for a, _ in self.binary[r]]
			if len(sources) != len(set(sources)):
				out.append(f"functional {r} has a node with out-degree above 1")
		if null_axiom and NULL in self.constants:
			null = self.constants[NULL]
			for r in sorted(self.binary):
				if any(a == null for a, _ in self.binary[r]):
					out.append(f"{r} has an edge leaving NULL")
		return out

	def is_valid(self, null_axiom: bool = True) -> bool:
		return not self.problems(null_axiom)

	def assert_valid(self, null_axiom: bool = True):
		problems = self.problems(null_axiom)
		assert not problems, "Invalid structure: " + "; ".join(problems)

	# Identity

	def key(self) -> tuple:
		if self._key is None:
			self._key = (
				self.size,
				tuple(sorted(self.constants.items())),
				tuple(sorted((p, tuple(sorted(v))) for p, v in self.unary.items())),
				tuple(sorted((r, tuple(sorted(v))) for r, v in self.binary.items())),
				tuple(sorted(self.functional)),
			)
		return self._key

	def __eq__(self, other):
		if not isinstance(other, Structure):
			return NotImplemented
		return self.key() == other.key()

	def __hash__(self):
		return hash(self.key())

	def digest(self) -> str:
		"""Short content hash, stable across runs"""
		text = json.dumps(self.to_dict(), sort_keys=True)
		return hashlib.sha1(text.encode("utf-8")).hexdigest()[:12]

	def to_dict(self) -> dict:
		return {
			"size": self.size,
			"constants": dict(sorted(self.constants.items())),
			"unary": {p: sorted(v) for p, v in sorted(self.unary.items())},
			"binary": {r: [list(e) for e in sorted(v)] for r, v in sorted(self.binary.items())},
			"functional": sorted(self.functional),
		}

	@classmethod
	def from_dict(cls, data: dict) -> "Structure":
		return cls(
			size=int(data["size"]),
			constants={c: int(d) for c, d in data["constants"].items()},
			unary={p: [int(d) for d in v] for p, v in data.get("unary", {}).items()},
			binary={r: [(int(a), int(b)) for a, b in v] for r, v in data.get("binary", {}).items()},
			functional=data.get("functional", ()),
		)

	def to_string(self) -> str:
		lines = [f"Structure of size {self.size}"]
		for d in self.domain:
			labels = sorted(p for p, v in self.unary.items() if d in v)
			edges = sorted(f"{r}->{b}" for r, v in self.binary.items() for a, b in v if a == d)
			consts = self.constants_at(d)
			lines.append(f"\t{d}: [{', '.join(consts)}] {' '.join(labels)} {' '.join(edges)}".rstrip())
		return "\n".join(lines)

	def __str__(self):
		return self.to_string()

	def __repr__(self):
		return f"Structure(size={self.size}, constants={self.constants})"


class Draft:
	"""Mutable structure under construction

	Exposes the same `size`, `constants`, `unary` and `binary` attributes as
	Structure so that it can be evaluated while it is being built.
	"""
	__slots__ = ("size", "constants", "unary", "binary", "functional")

	def __init__(
			self,
			size: int,
			constants: typing.Mapping[str, int],
			unary: typing.Iterable[str] = (),
			binary: typing.Iterable[str] = (),
			functional: typing.Iterable[str] = ()
	):
		self.size = size
		self.constants = dict(constants)
		self.unary = {p: set() for p in unary}
		self.binary = {r: set() for r in binary}
		self.functional = frozenset(functional)

	@classmethod
	def from_structure(cls, M: Structure) -> "Draft":
		draft = cls(M.size, M.constants, functional=M.functional)
		draft.unary = {p: set(v) for p, v in M.unary.items()}
		draft.binary = {r: set(v) for r, v in M.binary.items()}
		return draft

	def freeze(self) -> Structure:
		return Structure(self.size, self.constants, self.unary, self.binary, self.functional)


def structure_frame(M: Structure) -> pd.DataFrame:
	"""Per-node table of a structure

	Parameters:
	-----------
	M: Structure
		Structure to tabulate.

	Returns:
	--------
	pd.DataFrame
		Indexed by node; one column for constants, one boolean column per
		unary predicate, the target (or <NA>) per functional predicate and
		the sorted target list per relation.
	"""
	columns = {"constants": [", ".join(M.constants_at(d)) for d in M.domain]}
	for p in sorted(M.unary):
		columns[p] = [d in M.unary[p] for d in M.domain]
	for r in sorted(M.binary):
		if r in M.functional:
			columns[r] = pd.array([M.target(r, d) for d in M.domain], dtype="Int64")
		else:
			columns[r] = [sorted(M.successors(r, d)) for d in M.domain]
	df = pd.DataFrame(columns, index=pd.RangeIndex(M.size, name="node"))
	return df
