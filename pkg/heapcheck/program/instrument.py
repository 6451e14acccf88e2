"""
instrument

Allocation checks in front of dereferences
"""

import typing

from heapcheck.logic.formula import Const, constants
from heapcheck.program.actions import Action, Assume
from heapcheck.program.state import alloc_formula
from heapcheck.program.template import BoundedProgram


def alloc_check(types: typing.Iterable[str], var: str) -> Assume:
	return Assume(alloc_formula(types, Const(var)))


def instrument(bp: BoundedProgram) -> BoundedProgram:
	"""Insert assume(alloc(x)) before every action dereferencing x

	No check is inserted when the preceding action is already that exact
	assume, so instrumenting twice changes nothing.
	"""
	out: typing.List[Action] = []
	for a in bp.actions:
		var = a.dereferences()
		if var is not None:
			check = alloc_check(bp.decl.types, var)
			if not out or out[-1] != check:
				out.append(check)
		out.append(a)
	return BoundedProgram(bp.decl, bp.variables, tuple(out))


def guarded_variable(a: Action, types: typing.Iterable[str]) -> typing.Optional[str]:
	"""x when `a` is exactly assume(alloc(x)), else None"""
	if not isinstance(a, Assume):
		return None
	types = tuple(types)
	for name in sorted(constants(a.formula)):
		if alloc_check(types, name) == a:
			return name
	return None
