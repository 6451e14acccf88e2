"""
rename

Primed copies of vocabularies, formulas, structures and specifications
"""

import functools
import typing

from heapcheck.datalog.cardinality import CardinalitySystem, LinearConstraint
from heapcheck.datalog.clauses import Clause, DatalogProgram
from heapcheck.datalog.spec import SpecFormula
from heapcheck.errors import AlreadyPrimed
from heapcheck.logic.formula import Formula, map_formula
from heapcheck.logic.signature import Signature, PRIME, is_primed
from heapcheck.logic.structure import Structure


def prime(name: str) -> str:
	"""name'; priming twice is an error"""
	if is_primed(name):
		raise AlreadyPrimed(name)
	return name + PRIME


def _formula(f: Formula) -> Formula:
	return map_formula(f, pred=prime, const=prime)


def _program(P: DatalogProgram) -> DatalogProgram:
	clauses = [
		Clause(prime(c.head), _formula(c.guard), tuple((prime(r), prime(q)) for r, q in c.body))
		for c in P.clauses
	]
	return DatalogProgram(P.name + PRIME, clauses)


def _signature(sig: Signature) -> Signature:
	for name in sig.names:
		if is_primed(name):
			raise AlreadyPrimed(name)
	# NULL itself stays declared: every signature carries it
	return Signature(
		ext_unary={prime(p) for p in sig.ext_unary},
		ext_binary={prime(r): f for r, f in sig.ext_binary.items()},
		constants=tuple(prime(c) for c in sig.constants),
		int_unary={prime(p) for p in sig.int_unary},
		owner={prime(p): i for p, i in sig.owner.items()},
	)


def _structure(M: Structure) -> Structure:
	return Structure(
		size=M.size,
		constants={prime(c): d for c, d in M.constants.items()},
		unary={prime(p): v for p, v in M.unary.items()},
		binary={prime(r): v for r, v in M.binary.items()},
		functional={prime(r) for r in M.functional},
	)


def _spec(spec: SpecFormula) -> SpecFormula:
	delta = CardinalitySystem(tuple(
		LinearConstraint(tuple((c, prime(p)) for c, p in lc.terms), lc.cmp, lc.bound)
		for lc in spec.delta.constraints
	))
	return SpecFormula(
		programs=tuple(_program(P) for P in spec.programs),
		delta=delta,
		matrix=_formula(spec.matrix),
		signature=_signature(spec.signature),
		witnesses=frozenset(prime(w) for w in spec.witnesses),
	)


@functools.singledispatch
def rename_primed(x):
	"""Rename every predicate and constant n to n'

	Accepts a Formula, Structure, Signature, DatalogProgram or SpecFormula
	and returns the same kind. Raises AlreadyPrimed when a name is primed.
	"""
	raise TypeError(f"Cannot rename {type(x).__name__}")


rename_primed.register(Formula, _formula)
rename_primed.register(Structure, _structure)
rename_primed.register(Signature, _signature)
rename_primed.register(DatalogProgram, _program)
rename_primed.register(SpecFormula, _spec)


def extensional_part(sig: Signature) -> Signature:
	"""`sig` without its intensional predicates"""
	return Signature(ext_unary=sig.ext_unary, ext_binary=sig.ext_binary, constants=sig.constants)


def primed_names(names: typing.Iterable[str]) -> typing.List[str]:
	return [prime(n) for n in names]
