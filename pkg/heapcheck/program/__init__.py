from heapcheck.program.template import TemplateDecl, BoundedProgram
from heapcheck.program.actions import Action, Assume, Assign, Read, Write, Dispose, New
from heapcheck.program.state import State, alloc_formula
from heapcheck.program.semantics import (
	Failure, TraceStep, Trace, RunResult, step, run, replay, FAILURE_KINDS,
	ASSUME_FALSE, DEREF, NO_SUCH_FIELD, UNSET_FIELD, TYPE_MISMATCH, OUT_OF_MEMORY
)
from heapcheck.program.instrument import instrument, alloc_check, guarded_variable
