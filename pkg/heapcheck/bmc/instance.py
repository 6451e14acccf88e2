"""
instance

Model-checking instances for bounded programs and their bounded solver

An instance ⟨pre, post, BP⟩ asks for a pre-state satisfying `pre` and an
execution of BP ending in a post-state whose primed copy satisfies `post`.
The solver enumerates pre-states in canonical order, executes the program
on each and checks every post-state.
"""

import dataclasses
import logging
import typing

from heapcheck.bmc.rename import rename_primed, extensional_part, prime
from heapcheck.datalog.spec import SpecFormula, spec_sat_on, empty_spec, MAX_PRIVILEGED
from heapcheck.errors import SpecError, PrivilegeBudgetExceeded
from heapcheck.logic.formula import Eq, Const, predicates, constants
from heapcheck.logic.signature import is_primed
from heapcheck.logic.structure import Structure
from heapcheck.modelfind.config import SearchConfig
from heapcheck.modelfind.search import run_search, spec_space
from heapcheck.program.actions import Assign
from heapcheck.program.semantics import Trace, run, replay
from heapcheck.program.state import State
from heapcheck.program.template import BoundedProgram, TemplateDecl


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class MCInstance:
	"""⟨pre, post, bp⟩

	Parameters:
	-----------
	pre: SpecFormula
		Over the unprimed vocabulary, which includes the program's types,
		fields and variables.

	post: SpecFormula
		Over primed names only.

	bp: BoundedProgram
		Usually instrumented.

	kind: str; optional
		Name of the analysis that built the instance. [Default: "check"]
	"""
	pre: SpecFormula
	post: SpecFormula
	bp: BoundedProgram
	kind: str = "check"

	def privileged_in_use(self) -> int:
		return len(self.pre.privileged_in_use()) + len(self.post.privileged_in_use())

	def validate(self) -> "MCInstance":
		"""Check vocabularies and the joint privilege budget; returns self"""
		self.pre.validate()
		self.post.validate()
		sig = self.pre.signature
		decl = self.bp.decl
		missing = (
			(set(decl.types) - sig.ext_unary)
			| (set(decl.fields) - set(sig.ext_binary))
			| (set(self.bp.variables) - set(sig.constants))
		)
		if missing:
			raise SpecError(f"Program names missing from the pre-condition vocabulary: {sorted(missing)}")
		for r in decl.fields:
			if not sig.ext_binary[r]:
				raise SpecError(f"Field {r} must be functional.")
		post_names = predicates(self.post.matrix) | constants(self.post.matrix)
		for P in self.post.programs:
			post_names |= P.intensional() | P.edge_sig() | P.body_predicates() | P.guard_predicates()
		unprimed = sorted(n for n in post_names if not is_primed(n))
		if unprimed:
			raise SpecError(f"Post-condition mentions unprimed names: {unprimed}")
		used = self.privileged_in_use()
		if used > MAX_PRIVILEGED:
			raise PrivilegeBudgetExceeded(
				f"Pre- and post-condition need {used} privileged programs together; at most {MAX_PRIVILEGED} are allowed."
			)
		return self

	def to_string(self) -> str:
		return "\n".join([
			f"pre:  {self.pre.to_string()}",
			f"post: {self.post.to_string()}",
			self.bp.listing(),
		])

	def __str__(self):
		return self.to_string()


def with_program_vocabulary(spec: SpecFormula, bp: BoundedProgram) -> SpecFormula:
	"""`spec` whose signature also declares the types, fields and variables of `bp`"""
	return dataclasses.replace(spec, signature=spec.signature.merge(bp.signature()))


def primed_frame(spec: SpecFormula):
	"""Primed extensional vocabulary of a pre-condition, for building post-conditions"""
	return rename_primed(extensional_part(spec.signature))


def make_instance(pre: SpecFormula, bp: BoundedProgram, post: SpecFormula, kind: str = "check") -> MCInstance:
	"""Instance with the program vocabulary merged into `pre` and the primed frame into `post`"""
	pre = with_program_vocabulary(pre, bp)
	post = dataclasses.replace(post, signature=primed_frame(pre).merge(post.signature))
	return MCInstance(pre, post, bp, kind).validate()


@dataclasses.dataclass(frozen=True)
class Solution:
	"""A pre-state, the execution trace and the primed post-state

	`spare` lists the nodes appended to the enumerated pre-state.
	"""
	pre_state: State
	trace: Trace
	post_state: State
	spare: typing.Tuple[int, ...] = ()

	def validate(self, inst: MCInstance, null_axiom: bool = True):
		"""Assert the three defining conditions"""
		self.pre_state.assert_valid(null_axiom)
		pre = spec_sat_on(self.pre_state.heap, inst.pre)
		assert pre, f"Pre-state does not satisfy the pre-condition: {pre.to_string()}"
		end = replay(self.pre_state, inst.bp.actions, inst.bp.decl, self.trace)
		assert end is not None, "Trace does not replay on the pre-state."
		assert rename_primed(end.heap) == self.post_state.heap, "Replayed post-state differs from the recorded one."
		post = spec_sat_on(self.post_state.heap, inst.post)
		assert post, f"Post-state does not satisfy the post-condition: {post.to_string()}"

	def to_string(self) -> str:
		lines = ["Pre-state:", self.pre_state.to_string(), "Trace:"]
		for st in self.trace:
			choice = "" if st.choice is None else f" (cell {st.choice})"
			lines.append(f"\t[{st.index}] {st.action}{choice}")
		lines.extend(["Post-state:", self.post_state.to_string()])
		return "\n".join(lines)

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass
class BmcResult:
	"""Outcome of bmc_solve

	status is "sat" with a Solution, or "exhausted" up to `exhausted_at`.
	"""
	status: str
	bound: int
	solution: typing.Optional[Solution] = None
	exhausted_at: typing.Optional[int] = None
	warnings: typing.List[str] = dataclasses.field(default_factory=list)
	examined: int = 0
	kind: str = "check"
	program: str = ""
	leaked: typing.Optional[typing.List[int]] = None

	@property
	def sat(self) -> bool:
		return self.status == "sat"


class ExecuteAndCheck:
	"""Leaf check of the pre-state search

	Returns the first Solution starting in the candidate pre-state, in the
	order of the execution branches, or None.
	"""
	def __init__(self, inst: MCInstance, spare: int):
		self.inst = inst
		self.spare = spare

	def __call__(self, M: Structure) -> typing.Optional[Solution]:
		inst = self.inst
		if not spec_sat_on(M, inst.pre):
			return None
		state = State(M, inst.bp.decl.types)
		spare = tuple(range(M.size - self.spare, M.size))
		for end, trace in run(state, inst.bp.actions, inst.bp.decl):
			primed = State(rename_primed(end.heap), {prime(t) for t in end.types})
			if spec_sat_on(primed.heap, inst.post):
				return Solution(state, trace, primed, spare)
		return None


def bmc_solve(inst: MCInstance, cfg: SearchConfig) -> BmcResult:
	"""Search for a Solution of `inst` within the bounds of `cfg`

	Pre-states of sizes cfg.first_size(..)..cfg.max_domain are enumerated in
	canonical order, each with cfg.spare_cells extra unallocated nodes. The
	starting size counts the declared constants but not the program
	variables.

	Parameters:
	-----------
	inst: MCInstance

	cfg: SearchConfig

	Returns:
	--------
	BmcResult
		"sat" with the canonically least Solution, which has been
		re-validated, or "exhausted" with the bound.
	"""
	inst.validate()
	# program variables may start on NULL or on a shared cell
	declared = len(set(inst.pre.signature.constants) - set(inst.bp.variables))
	warnings = cfg.bound_warnings(declared)
	for w in warnings:
		logger.warning(w)
	space = spec_space(
		inst.pre, null_axiom=cfg.null_axiom, exclusive=inst.bp.decl.types,
		edge_cap=cfg.edge_cap, spare=cfg.spare_cells,
	)
	outcome = run_search(space, ExecuteAndCheck(inst, cfg.spare_cells), cfg, declared=declared)
	program = inst.bp.to_string()
	if not outcome.found:
		logger.info("%s: no solution up to size %d", inst.kind, cfg.max_domain)
		return BmcResult(
			"exhausted", cfg.max_domain, exhausted_at=cfg.max_domain, warnings=warnings,
			examined=outcome.examined, kind=inst.kind, program=program,
		)
	solution = outcome.result
	solution.validate(inst, cfg.null_axiom)
	logger.info("%s: solution with a pre-state of %d nodes", inst.kind, solution.pre_state.heap.size)
	return BmcResult(
		"sat", cfg.max_domain, solution, warnings=warnings,
		examined=outcome.examined, kind=inst.kind, program=program,
	)


def sat_instance(spec: SpecFormula) -> MCInstance:
	"""⟨spec, [∅](x' = x'), x := x⟩: solvable exactly when `spec` is satisfiable

	`x` and the single record type are fresh names.
	"""
	sig = spec.signature
	var = sig.fresh("x")
	cell = sig.fresh("cell")
	bp = BoundedProgram(TemplateDecl({cell}), (var,), (Assign(var, var),))
	pre = with_program_vocabulary(spec, bp)
	post = empty_spec(primed_frame(pre), Eq(Const(prime(var)), Const(prime(var))))
	return make_instance(spec, bp, post, kind="sat")
