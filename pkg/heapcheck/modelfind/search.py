"""
search

Size-increasing search for structures, optionally in parallel
"""

import dataclasses
import logging
import multiprocessing
import typing

from heapcheck.datalog.spec import SpecFormula, SatReport, spec_sat_on
from heapcheck.logic.formula import Formula, Const, Eq, predicates
from heapcheck.logic.normalize import conjuncts
from heapcheck.logic.signature import NULL
from heapcheck.logic.structure import Structure
from heapcheck.modelfind.config import SearchConfig
from heapcheck.modelfind.enumerate import StructureSpace


logger = logging.getLogger(__name__)


@dataclasses.dataclass
class SearchOutcome:
	"""First success of a search, or None when the bound was exhausted"""
	result: typing.Any
	key: typing.Optional[tuple]
	size: typing.Optional[int]
	bound: int
	examined: int

	@property
	def found(self) -> bool:
		return self.result is not None


def _search_partition(args) -> typing.Tuple[typing.Optional[tuple], typing.Any, int]:
	space, n, partition, leaf = args
	examined = 0
	for key, M in space.candidates(n, partition):
		# an isomorphic copy with a smaller key comes first in the stream
		if not space.is_canonical(key):
			continue
		examined += 1
		result = leaf(M)
		if result is not None:
			return key, result, examined
	return None, None, examined


def run_search(
		space: StructureSpace,
		leaf: typing.Callable[[Structure], typing.Any],
		cfg: SearchConfig,
		declared: int = None
) -> SearchOutcome:
	"""Try candidate structures of increasing size until `leaf` returns a result

	Parameters:
	-----------
	space: StructureSpace

	leaf: callable
		Maps a candidate to a result, or to None to keep searching. Must be
		picklable when cfg.parallel_width > 1.

	cfg: SearchConfig

	declared: int; optional
		Constants the first size must hold apart when cfg.min_domain is
		unset. [Default: every constant of the space]

	Returns:
	--------
	SearchOutcome
		With cfg.deterministic the result is the one of least key, whatever
		the width.
	"""
	width = cfg.parallel_width
	examined = 0
	first = cfg.first_size(len(space.constants) if declared is None else declared)
	pool = multiprocessing.Pool(width) if width > 1 else None
	try:
		for n in range(first, cfg.max_domain + 1):
			logger.debug("Searching structures of size %d (+%d spare)", n, space.spare)
			if pool is None:
				results = [_search_partition((space, n, None, leaf))]
			else:
				tasks = [(space, n, (i, width), leaf) for i in range(width)]
				if cfg.deterministic:
					results = pool.map(_search_partition, tasks)
				else:
					results = []
					for r in pool.imap_unordered(_search_partition, tasks):
						results.append(r)
						if r[0] is not None:
							break
			examined += sum(r[2] for r in results)
			hits = [r for r in results if r[0] is not None]
			if hits:
				key, result, _ = min(hits, key=lambda r: r[0]) if cfg.deterministic else hits[0]
				logger.info("Found a structure of size %d after %d candidates", n, examined)
				return SearchOutcome(result, key, n, cfg.max_domain, examined)
		logger.info("Exhausted sizes %d..%d after %d candidates", first, cfg.max_domain, examined)
		return SearchOutcome(None, None, None, cfg.max_domain, examined)
	finally:
		if pool is not None:
			pool.terminate()
			pool.join()


def spec_space(
		spec: SpecFormula,
		null_axiom: bool = True,
		exclusive: typing.Iterable[str] = (),
		edge_cap: int = None,
		spare: int = 0,
		keep_null_apart: bool = False
) -> StructureSpace:
	"""Candidate space for the extensional models of `spec`

	Witness predicates are not enumerated; extensional conjuncts of the
	matrix and the sharing groups of the programs are used for pruning.
	With `keep_null_apart` a constant may share the NULL node only when a
	top-level conjunct of the matrix equates the two.
	"""
	sig = spec.signature
	unary = sig.ext_unary - spec.witnesses
	names = unary | set(sig.ext_binary)
	prune = [c for c in conjuncts(spec.matrix) if predicates(c) <= names]
	aliases = null_aliases(spec.matrix) if keep_null_apart else None
	return StructureSpace(
		sig, unary=unary, null_axiom=null_axiom, exclusive=exclusive,
		edge_cap=edge_cap, sharing=[P.edge_sig() for P in spec.programs],
		prune=prune, spare=spare, null_aliases=aliases,
	)


def null_aliases(matrix: Formula) -> typing.FrozenSet[str]:
	"""Constants equated with NULL by a top-level conjunct of `matrix`"""
	out = set()
	for c in conjuncts(matrix):
		if isinstance(c, Eq) and isinstance(c.left, Const) and isinstance(c.right, Const):
			names = {c.left.name, c.right.name}
			if NULL in names:
				out |= names - {NULL}
	return frozenset(out)


class SatisfiesSpec:
	"""Leaf check: the candidate and its report when spec_sat_on succeeds, else None"""
	def __init__(self, spec: SpecFormula):
		self.spec = spec

	def __call__(self, M: Structure) -> typing.Optional[typing.Tuple[Structure, SatReport]]:
		report = spec_sat_on(M, self.spec)
		return (M, report) if report else None


@dataclasses.dataclass
class ModelResult:
	status: str
	bound: int
	structure: typing.Optional[Structure] = None
	report: typing.Optional[SatReport] = None
	exhausted_at: typing.Optional[int] = None
	warnings: typing.List[str] = dataclasses.field(default_factory=list)
	examined: int = 0

	@property
	def found(self) -> bool:
		return self.status == "found"


def find_model(spec: SpecFormula, cfg: SearchConfig) -> ModelResult:
	"""Least model of `spec` within the bounds, in canonical order

	Parameters:
	-----------
	spec: SpecFormula
		Validated specification.

	cfg: SearchConfig

	Returns:
	--------
	ModelResult
		status "found" with the extensional structure and its checked
		extension, or "exhausted" with the bound.
	"""
	warnings = cfg.bound_warnings(len(spec.signature.constants))
	for w in warnings:
		logger.warning(w)
	space = spec_space(spec, null_axiom=cfg.null_axiom, edge_cap=cfg.edge_cap, keep_null_apart=True)
	outcome = run_search(space, SatisfiesSpec(spec), cfg)
	if not outcome.found:
		return ModelResult(
			"exhausted", cfg.max_domain, exhausted_at=cfg.max_domain,
			warnings=warnings, examined=outcome.examined
		)
	M, _ = outcome.result
	check = spec_sat_on(M, spec)
	assert check, f"Model failed re-verification: {check.to_string()}"
	return ModelResult("found", cfg.max_domain, M, check, warnings=warnings, examined=outcome.examined)
