from heapcheck.logic.signature import Signature, NULL, PRIME, is_primed
from heapcheck.logic.formula import (
	Formula, Term, Var, Const, X, Y, VARIABLES, COMPARATORS,
	Truth, TRUE, FALSE, UnaryAtom, BinaryAtom, Eq, Not, And, Or, Implies, Iff,
	Forall, Exists, Count, conj, disj, walk, predicates, constants, free_vars,
	is_quantifier_free, map_formula, substitute, to_string
)
from heapcheck.logic.structure import Structure, Draft, structure_frame
from heapcheck.logic.evaluate import evaluate, evaluate3
from heapcheck.logic.normalize import (
	nnf, is_universal, conjuncts, const_guard, check_restricted, Violation, RestrictionVerdict
)
