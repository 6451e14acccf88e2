"""
spec

C2+Datalog specifications and their satisfaction on concrete structures
"""

import dataclasses
import itertools
import logging
import typing

from heapcheck.datalog.cardinality import CardinalitySystem, eval_delta
from heapcheck.datalog.clauses import DatalogProgram
from heapcheck.datalog.fixpoint import least_extension
from heapcheck.datalog.restrictions import check_bsr, check_bir
from heapcheck.errors import SpecError
from heapcheck.logic.evaluate import evaluate, evaluate3
from heapcheck.logic.formula import Formula, TRUE, constants, predicates, walk, UnaryAtom, BinaryAtom
from heapcheck.logic.normalize import check_restricted, conjuncts
from heapcheck.logic.signature import Signature
from heapcheck.logic.structure import Structure, Draft


logger = logging.getLogger(__name__)

MAX_PRIVILEGED = 2


@dataclasses.dataclass(frozen=True)
class SpecFormula:
	"""[P_1, ..., P_k, Δ] φ

	Parameters:
	-----------
	programs: tuple of DatalogProgram
		Pairwise disjoint programs. The first two are privileged.

	delta: CardinalitySystem

	matrix: Formula

	signature: Signature
		Vocabulary of the whole specification; the owner of each
		intensional predicate is the index of its program.

	witnesses: frozenset of str; optional
		Extensional unary predicates chosen existentially when the
		specification is checked on a structure that does not interpret
		them. [Default: none]
	"""
	programs: typing.Tuple[DatalogProgram, ...]
	delta: CardinalitySystem
	matrix: Formula
	signature: Signature
	witnesses: typing.FrozenSet[str] = frozenset()

	def __post_init__(self):
		object.__setattr__(self, "programs", tuple(self.programs))
		object.__setattr__(self, "witnesses", frozenset(self.witnesses))

	@property
	def privileged(self) -> typing.FrozenSet[int]:
		return frozenset(range(min(MAX_PRIVILEGED, len(self.programs))))

	def intensional(self) -> typing.FrozenSet[str]:
		out = frozenset()
		for P in self.programs:
			out |= P.intensional()
		return out

	def privileged_in_use(self) -> typing.FrozenSet[int]:
		"""Programs whose predicates need the privilege

		These own a literal occurring unrestricted in the matrix, or a
		predicate counted by the cardinality system.
		"""
		used = set(check_restricted(self.matrix, self.signature, frozenset()).owners)
		for p in self.delta.names:
			if p in self.signature.int_unary:
				used.add(self.signature.owner[p])
		return frozenset(used)

	def validate(self) -> "SpecFormula":
		"""Check the load-time conditions; returns self"""
		sig = self.signature
		seen = {}
		for i, P in enumerate(self.programs):
			for p in P.intensional():
				if p in seen:
					raise SpecError(f"Programs {seen[p]} and {P.name} both define {p}.")
				seen[p] = P.name
				if sig.owner.get(p) != i:
					raise SpecError(f"Signature does not record program {i} ({P.name}) as owner of {p}.")
			P.validate(sig)
		for p in predicates(self.matrix):
			if sig.arity(p) is None:
				raise SpecError(f"Predicate {p} is not declared.")
		for g in walk(self.matrix):
			if isinstance(g, UnaryAtom) and sig.arity(g.pred) != 1:
				raise SpecError(f"{g.pred} is not unary.")
			if isinstance(g, BinaryAtom) and sig.arity(g.pred) != 2:
				raise SpecError(f"{g.pred} is not binary.")
		missing = constants(self.matrix) - set(sig.constants)
		if missing:
			raise SpecError(f"Undeclared constants: {sorted(missing)}")
		verdict = check_restricted(self.matrix, sig, self.privileged)
		if not verdict:
			details = "; ".join(v.to_string() for v in verdict.violations)
			raise SpecError(f"Unrestricted occurrences of non-privileged predicates: {details}")
		for p in self.delta.names:
			if p in sig.ext_unary:
				continue
			if p in sig.int_unary and sig.owner[p] in self.privileged:
				continue
			raise SpecError(f"Cardinality constraint on #{p}, which is neither extensional nor privileged.")
		stray = self.witnesses - sig.ext_unary
		if stray:
			raise SpecError(f"Witness predicates must be extensional unary: {sorted(stray)}")
		return self

	def to_string(self) -> str:
		names = [P.name for P in self.programs]
		if self.delta:
			names.append("Δ")
		return f"[{', '.join(names)}] {self.matrix.to_string()}"

	def __str__(self):
		return self.to_string()


def empty_spec(signature: Signature, matrix: Formula = TRUE) -> SpecFormula:
	"""[∅] matrix"""
	return SpecFormula((), CardinalitySystem(), matrix, signature)


@dataclasses.dataclass(frozen=True)
class SatReport:
	"""Outcome of checking a specification on one structure

	`stage` names the first failing check (bsr, bir, delta, matrix, witness)
	or is None on success; `extended` is the least extension that was
	checked, including the chosen witness labeling.
	"""
	ok: bool
	stage: typing.Optional[str] = None
	detail: str = ""
	extended: typing.Optional[Structure] = None

	def __bool__(self):
		return self.ok

	def to_string(self) -> str:
		if self.ok:
			return "satisfied"
		return f"fails at {self.stage}: {self.detail}"


def _check_extended(Mp: Structure, spec: SpecFormula, include_restrictions: bool = True) -> SatReport:
	if include_restrictions:
		verdict = check_bsr(Mp, spec.programs)
		if not verdict:
			return SatReport(False, "bsr", verdict.to_string(), Mp)
		verdict = check_bir(Mp, spec.programs)
		if not verdict:
			return SatReport(False, "bir", verdict.to_string(), Mp)
	if not eval_delta(Mp, spec.delta):
		return SatReport(False, "delta", spec.delta.to_string(), Mp)
	if not evaluate(Mp, spec.matrix):
		return SatReport(False, "matrix", spec.matrix.to_string(), Mp)
	return SatReport(True, None, "", Mp)


def spec_sat_on(M: Structure, spec: SpecFormula) -> SatReport:
	"""Does `M` satisfy `spec`?

	Computes the least extension of `M`, then checks bsr, bir, the
	cardinality system and the matrix, in that order.

	Parameters:
	-----------
	M: Structure
		Extensional structure. Witness predicates of `spec` that `M` does
		not interpret are searched for.

	spec: SpecFormula

	Returns:
	--------
	SatReport
		Truthy on success.
	"""
	todo = sorted(w for w in spec.witnesses if w not in M.unary)
	if not todo:
		return _check_extended(least_extension(M, spec.programs), spec)
	return _witness_search(M, spec, todo)


def _witness_search(M: Structure, spec: SpecFormula, todo: typing.List[str]) -> SatReport:
	base = M
	for w in todo:
		base = base.with_unary(w, ())
	guards_use_witnesses = any(set(todo) & P.guard_predicates() for P in spec.programs)
	if guards_use_witnesses:
		prunable = [c for c in conjuncts(spec.matrix) if not predicates(c) & spec.intensional()]
		Mp = base
	else:
		Mp = least_extension(base, spec.programs)
		for check in (check_bsr, check_bir):
			verdict = check(Mp, spec.programs)
			if not verdict:
				return SatReport(False, check.__name__.replace("check_", ""), verdict.to_string(), Mp)
		prunable = conjuncts(spec.matrix)
		for c in prunable:
			if not predicates(c) & set(todo) and not evaluate(Mp, c):
				return SatReport(False, "matrix", c.to_string(), Mp)
	prunable = [c for c in prunable if predicates(c) & set(todo)]
	draft = Draft.from_structure(Mp)
	labels = [frozenset(s) for k in range(len(todo) + 1) for s in itertools.combinations(todo, k)]
	open_names = frozenset(todo)
	tried = 0

	def consistent(frontier: int) -> bool:
		return all(evaluate3(draft, c, frontier=frontier, open_names=open_names) is not False for c in prunable)

	def search(d: int) -> typing.Optional[SatReport]:
		nonlocal tried
		if d == draft.size:
			tried += 1
			labeled = draft.freeze()
			if guards_use_witnesses:
				report = _check_extended(least_extension(labeled, spec.programs), spec)
			else:
				report = _check_extended(labeled, spec, include_restrictions=False)
			return report if report else None
		for chosen in labels:
			for w in chosen:
				draft.unary[w].add(d)
			if consistent(d + 1):
				found = search(d + 1)
				if found is not None:
					return found
			for w in chosen:
				draft.unary[w].discard(d)
		return None

	found = search(0) if consistent(0) else None
	logger.debug("Witness search over %s examined %d complete labelings", todo, tried)
	if found is not None:
		return found
	return SatReport(False, "witness", f"no labeling of {', '.join(todo)} satisfies the specification", Mp)
