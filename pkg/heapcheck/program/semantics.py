"""
semantics

Concrete execution of bounded programs

A step either yields successor states (several only for `new`) or a
Failure. Failures are values: a failing branch simply has no post-state.
"""

import dataclasses
import logging
import typing

from heapcheck.logic.evaluate import evaluate
from heapcheck.program.actions import Action, Assume, Assign, Read, Write, Dispose, New
from heapcheck.program.state import State
from heapcheck.program.template import TemplateDecl


logger = logging.getLogger(__name__)

ASSUME_FALSE = "AssumeFalse"
DEREF = "Deref"
NO_SUCH_FIELD = "NoSuchField"
UNSET_FIELD = "UnsetField"
TYPE_MISMATCH = "TypeMismatch"
OUT_OF_MEMORY = "OutOfMemory"
FAILURE_KINDS = (ASSUME_FALSE, DEREF, NO_SUCH_FIELD, UNSET_FIELD, TYPE_MISMATCH, OUT_OF_MEMORY)


@dataclasses.dataclass(frozen=True)
class Failure:
	kind: str
	index: int
	action: str = ""
	detail: str = ""

	def __post_init__(self):
		assert self.kind in FAILURE_KINDS, f"Unknown failure kind {self.kind!r}."

	def to_string(self) -> str:
		text = f"[{self.index}] {self.kind}"
		if self.action:
			text += f" at {self.action}"
		if self.detail:
			text += f": {self.detail}"
		return text

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class TraceStep:
	index: int
	action: str
	choice: typing.Optional[int]
	digest: str

	def to_dict(self) -> dict:
		return {"index": self.index, "action": self.action, "choice": self.choice, "digest": self.digest}

	@classmethod
	def from_dict(cls, data: dict) -> "TraceStep":
		return cls(int(data["index"]), data["action"], data["choice"], data["digest"])


Trace = typing.Tuple[TraceStep, ...]
Successors = typing.List[typing.Tuple[State, typing.Optional[int]]]


def _clear_fields(heap, d: int, decl: TemplateDecl):
	binary = dict(heap.binary)
	for f in decl.fields:
		if f in binary:
			binary[f] = frozenset((a, b) for a, b in binary[f] if a != d)
	return heap.replace(binary=binary)


def _field_source(s: State, var: str, field: str, decl: TemplateDecl, index: int, action: Action):
	d = s.node(var)
	t = s.type_of(d)
	if t is None:
		return Failure(DEREF, index, action.to_string(), f"{var} points to an unallocated cell")
	if not decl.has_field(t, field):
		return Failure(NO_SUCH_FIELD, index, action.to_string(), f"type {t} has no field {field}")
	return d


def step(s: State, a: Action, decl: TemplateDecl, index: int = 0) -> typing.Union[Successors, Failure]:
	"""Successors of `s` under `a`

	Parameters:
	-----------
	s: State

	a: Action

	decl: TemplateDecl

	index: int; optional
		Position of `a` in its program, for failure reports. [Default: 0]

	Returns:
	--------
	list of (State, choice), or Failure
		`choice` is the allocated node for New and None otherwise.
	"""
	heap = s.heap
	if isinstance(a, Assume):
		if evaluate(heap, a.formula):
			return [(s, None)]
		return Failure(ASSUME_FALSE, index, a.to_string())
	if isinstance(a, Assign):
		return [(State(heap.with_constant(a.target, s.node(a.source)), s.types), None)]
	if isinstance(a, Read):
		d = _field_source(s, a.source, a.field, decl, index, a)
		if isinstance(d, Failure):
			return d
		t = heap.target(a.field, d) if a.field in heap.binary else None
		if t is None:
			return Failure(UNSET_FIELD, index, a.to_string(), f"{a.source}.{a.field} is unset")
		return [(State(heap.with_constant(a.target, t), s.types), None)]
	if isinstance(a, Write):
		d = _field_source(s, a.target, a.field, decl, index, a)
		if isinstance(d, Failure):
			return d
		e = s.node(a.value)
		# a declared field the heap leaves out is empty
		pairs = {(u, v) for u, v in heap.binary.get(a.field, ()) if u != d}
		pairs.add((d, e))
		heap = heap.with_binary(a.field, pairs).replace(functional=heap.functional | {a.field})
		return [(State(heap, s.types), None)]
	if isinstance(a, Dispose):
		d = s.node(a.var)
		t = s.type_of(d)
		if t is None:
			return Failure(DEREF, index, a.to_string(), f"{a.var} points to an unallocated cell")
		if t != a.type:
			return Failure(TYPE_MISMATCH, index, a.to_string(), f"{a.var} has type {t}, not {a.type}")
		heap = heap.with_unary(t, heap.unary[t] - {d})
		return [(State(_clear_fields(heap, d, decl), s.types), None)]
	if isinstance(a, New):
		free = s.unallocated_nodes()
		if not free:
			return Failure(OUT_OF_MEMORY, index, a.to_string(), "no unallocated cell left")
		out = []
		for d in free:
			h = heap.with_unary(a.type, heap.unary.get(a.type, frozenset()) | {d})
			h = _clear_fields(h, d, decl).with_constant(a.target, d)
			out.append((State(h, s.types), d))
		return out
	raise TypeError(f"Not an action: {a!r}")


@dataclasses.dataclass
class RunResult:
	"""Successful branches and failed branches of one execution"""
	branches: typing.List[typing.Tuple[State, Trace]] = dataclasses.field(default_factory=list)
	failures: typing.List[typing.Tuple[Failure, Trace]] = dataclasses.field(default_factory=list)

	def __iter__(self):
		return iter(self.branches)

	def __len__(self):
		return len(self.branches)

	def __bool__(self):
		return bool(self.branches)


def run(s: State, actions: typing.Sequence[Action], decl: TemplateDecl) -> RunResult:
	"""Execute `actions` from `s`, exploring every allocation choice

	Branches are explored depth first in node order of the New choices, so
	the order of `branches` is deterministic.
	"""
	result = RunResult()

	def go(state: State, i: int, trace: Trace):
		if i == len(actions):
			result.branches.append((state, trace))
			return
		a = actions[i]
		out = step(state, a, decl, i)
		if isinstance(out, Failure):
			result.failures.append((out, trace))
			return
		for nxt, choice in out:
			go(nxt, i + 1, trace + (TraceStep(i, a.to_string(), choice, nxt.digest()),))

	go(s, 0, ())
	logger.debug("Run of %d actions: %d branches, %d failures", len(actions), len(result.branches), len(result.failures))
	return result


def replay(s: State, actions: typing.Sequence[Action], decl: TemplateDecl, trace: Trace) -> typing.Optional[State]:
	"""Follow the allocation choices recorded in `trace`; None if it does not apply"""
	if len(trace) != len(actions):
		return None
	for i, (a, record) in enumerate(zip(actions, trace)):
		out = step(s, a, decl, i)
		if isinstance(out, Failure):
			return None
		matches = [nxt for nxt, choice in out if choice == record.choice]
		if not matches or matches[0].digest() != record.digest:
			return None
		s = matches[0]
	return s
