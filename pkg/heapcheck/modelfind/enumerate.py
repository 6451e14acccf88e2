"""
enumerate

Bounded enumeration of extensional structures

Structures of size n are built node by node. Constants are placed first by
restricted growth (NULL on node 0, every further constant on an existing
constant node or on the next fresh one, and on node 0 only when it may
alias NULL), so constant nodes are always 0..k-1. Each node then
receives a row: its unary labels, the target of every functional
predicate (or none) and its successor set for every relation. Rows are
generated in increasing order of their integer encoding, so candidates
come out in lexicographic order of (constant placement, rows).

Partial structures are pruned when an extensional conjunct evaluates to
False under three-valued semantics, or when two edges of one sharing group
meet at a non-constant node.
"""

import collections
import itertools
import logging
import typing

from heapcheck.logic.evaluate import evaluate, evaluate3
from heapcheck.logic.formula import Formula, predicates
from heapcheck.logic.normalize import conjuncts
from heapcheck.logic.signature import Signature
from heapcheck.logic.structure import Structure, Draft


logger = logging.getLogger(__name__)


Row = collections.namedtuple("Row", ["key", "labels", "edges", "counts"])


def _bits(mask: int) -> typing.List[int]:
	return [b for b in range(mask.bit_length()) if mask >> b & 1]


class StructureSpace:
	"""The candidate structures over one signature

	Parameters:
	-----------
	sig: Signature
		Supplies constants, functional predicates and relations.

	unary: iterable of str; optional
		Unary predicates to enumerate. [Default: sig.ext_unary]

	null_axiom: bool; optional
		Forbid edges leaving NULL. [Default: True]

	exclusive: iterable of str; optional
		Unary predicates of which at most one holds per node and none at
		NULL (the types of a template). [Default: none]

	edge_cap: int; optional
		Largest number of tuples per relation. [Default: the size]

	sharing: iterable of sets of str; optional
		Groups of binary predicates under the bounded-sharing restriction.

	prune: iterable of Formula; optional
		Sentences over enumerated names only. Partial structures on which
		one of them is definitely false are abandoned.

	filters: iterable of Formula or callable; optional
		Checked on every complete candidate.

	spare: int; optional
		Isolated nodes appended after the enumerated ones. [Default: 0]

	null_aliases: iterable of str; optional
		Constants allowed on the NULL node. Any other constant gets a node
		of its own or shares one with another constant.
		[Default: every constant]
	"""
	def __init__(
			self,
			sig: Signature,
			unary: typing.Iterable[str] = None,
			null_axiom: bool = True,
			exclusive: typing.Iterable[str] = (),
			edge_cap: int = None,
			sharing: typing.Iterable[typing.AbstractSet[str]] = (),
			prune: typing.Iterable[Formula] = (),
			filters: typing.Iterable[typing.Union[Formula, typing.Callable[[Structure], bool]]] = (),
			spare: int = 0,
			null_aliases: typing.Iterable[str] = None
	):
		self.constants = sig.constants
		self.unary = tuple(sorted(sig.ext_unary if unary is None else unary))
		self.functional = tuple(sorted(sig.functional))
		self.relations = tuple(sorted(sig.relations))
		self.null_axiom = null_axiom
		self.exclusive = frozenset(exclusive) & frozenset(self.unary)
		self.edge_cap = edge_cap
		self.sharing = tuple(frozenset(g) for g in sharing if g)
		self.prune = tuple(prune)
		self.filters = tuple(filters)
		self.spare = spare
		self.null_aliases = None if null_aliases is None else frozenset(null_aliases)
		self.open_names = frozenset(self.unary + self.functional + self.relations)
		self._row_cache = {}

	# Rows

	def rows(self, n: int, null: bool) -> typing.List[Row]:
		"""Admissible rows of the NULL node or of any other node, in key order"""
		if (n, null) in self._row_cache:
			return self._row_cache[(n, null)]
		emits = not (null and self.null_axiom)
		cap = n if self.edge_cap is None else self.edge_cap
		components = []
		for p in self.unary:
			components.append((0,) if null and p in self.exclusive else (0, 1))
		for _ in self.functional:
			components.append(tuple(range(n + 1)) if emits else (0,))
		for _ in self.relations:
			components.append(tuple(m for m in range(1 << n) if bin(m).count("1") <= cap) if emits else (0,))
		nu = len(self.unary)
		nf = len(self.functional)
		out = []
		for key in itertools.product(*components):
			labels = tuple(p for p, bit in zip(self.unary, key[:nu]) if bit)
			if len(self.exclusive.intersection(labels)) > 1:
				continue
			edges = []
			for f, t in zip(self.functional, key[nu:nu + nf]):
				if t:
					edges.append((f, t - 1))
			counts = []
			for r, mask in zip(self.relations, key[nu + nf:]):
				targets = _bits(mask)
				edges.extend((r, t) for t in targets)
				counts.append(len(targets))
			out.append(Row(key, labels, tuple(edges), tuple(counts)))
		self._row_cache[(n, null)] = out
		return out

	def constant_placements(self, n: int) -> typing.List[typing.Tuple[int, ...]]:
		"""Restricted-growth placements of the constants on nodes 0..n-1"""
		out = []
		count = len(self.constants)

		def go(acc, used):
			if len(acc) == count:
				out.append(tuple(acc))
				return
			name = self.constants[len(acc)]
			low = 0 if self.null_aliases is None or name in self.null_aliases else 1
			for v in range(low, min(used + 1, n)):
				acc.append(v)
				go(acc, max(used, v + 1))
				acc.pop()

		go([0], 1)
		return out

	# Search

	def consistent(self, draft: Draft, frontier: int, n: int) -> bool:
		for c in self.prune:
			if evaluate3(draft, c, frontier=frontier, open_names=self.open_names, horizon=n) is False:
				return False
		return True

	def accepts(self, M: Structure) -> bool:
		for flt in self.filters:
			ok = evaluate(M, flt) if isinstance(flt, Formula) else flt(M)
			if not ok:
				return False
		return True

	def candidates(
			self,
			n: int,
			partition: typing.Tuple[int, int] = None
	) -> typing.Iterator[typing.Tuple[tuple, Structure]]:
		"""Candidate structures of core size `n`, with their ordering keys

		Parameters:
		-----------
		n: int
			Number of enumerated nodes; spare nodes come on top.

		partition: tuple of (int, int); optional
			(index, width): only constant placements whose position is
			congruent to index modulo width. [Default: all]

		Yields:
		-------
		(key, Structure)
			Keys increase strictly along the stream.
		"""
		null_rows = self.rows(n, True)
		other_rows = self.rows(n, False)
		cap = n if self.edge_cap is None else self.edge_cap
		binary = self.functional + self.relations
		for i, placement in enumerate(self.constant_placements(n)):
			if partition is not None and i % partition[1] != partition[0]:
				continue
			k = max(placement) + 1
			draft = Draft(
				n + self.spare, dict(zip(self.constants, placement)),
				self.unary, binary, self.functional
			)
			if not self.consistent(draft, 0, n):
				continue
			chosen = []
			totals = [0] * len(self.relations)
			indeg = [[0] * n for _ in self.sharing]

			def place(d: int):
				for row in (null_rows if d == 0 else other_rows):
					if any(t + c > cap for t, c in zip(totals, row.counts)):
						continue
					shared = False
					touched = []
					for g, group in enumerate(self.sharing):
						for r, t in row.edges:
							if r in group:
								indeg[g][t] += 1
								touched.append((g, t))
								if t >= k and indeg[g][t] > 1:
									shared = True
					if not shared:
						for p in row.labels:
							draft.unary[p].add(d)
						for r, t in row.edges:
							draft.binary[r].add((d, t))
						if self.consistent(draft, d + 1, n):
							for j, c in enumerate(row.counts):
								totals[j] += c
							chosen.append(row.key)
							if d + 1 == n:
								M = draft.freeze()
								if self.accepts(M):
									yield (placement, tuple(chosen)), M
							else:
								yield from place(d + 1)
							chosen.pop()
							for j, c in enumerate(row.counts):
								totals[j] -= c
						for p in row.labels:
							draft.unary[p].discard(d)
						for r, t in row.edges:
							draft.binary[r].discard((d, t))
					for g, t in touched:
						indeg[g][t] -= 1

			yield from place(0)

	def is_canonical(self, key: tuple) -> bool:
		"""No relabeling of the non-constant nodes gives a smaller key"""
		placement, rows = key
		n = len(rows)
		k = max(placement) + 1
		nu = len(self.unary)
		nf = len(self.functional)
		for perm in itertools.permutations(range(k, n)):
			mapping = tuple(range(k)) + perm
			if mapping == tuple(range(n)):
				continue
			relabeled = [None] * n
			for d, row in enumerate(rows):
				new = list(row[:nu])
				new.extend(mapping[t - 1] + 1 if t else 0 for t in row[nu:nu + nf])
				new.extend(sum(1 << mapping[b] for b in _bits(m)) for m in row[nu + nf:])
				relabeled[mapping[d]] = tuple(new)
			if tuple(relabeled) < rows:
				return False
		return True


def enumerate_structures(
		sig: Signature,
		n: int,
		filters: typing.Iterable[typing.Union[Formula, typing.Callable[[Structure], bool]]] = (),
		null_axiom: bool = True,
		exclusive: typing.Iterable[str] = (),
		edge_cap: int = None
) -> typing.Iterator[Structure]:
	"""Every structure of size `n` over `sig`, once per isomorphism class

	Isomorphisms fix the constants pointwise. Formula filters over
	extensional names also prune partial structures.

	Parameters:
	-----------
	sig: Signature

	n: int
		Domain size.

	filters: list of Formula or callable; optional
		Conditions every yielded structure meets.

	null_axiom: bool; optional
		[Default: True]

	exclusive: iterable of str; optional
		Unary predicates that partition the non-NULL nodes they label.

	edge_cap: int; optional
		[Default: n]

	Yields:
	-------
	Structure
		In canonical order.
	"""
	filters = tuple(filters)
	names = sig.ext_unary | set(sig.ext_binary)
	prune = [c for f in filters if isinstance(f, Formula) for c in conjuncts(f) if predicates(c) <= names]
	space = StructureSpace(
		sig, null_axiom=null_axiom, exclusive=exclusive, edge_cap=edge_cap,
		prune=prune, filters=filters
	)
	count = 0
	for key, M in space.candidates(n):
		if space.is_canonical(key):
			count += 1
			yield M
	logger.debug("Enumerated %d structures of size %d", count, n)
