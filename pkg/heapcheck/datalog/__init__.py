from heapcheck.datalog.clauses import Clause, DatalogProgram, universal_closure
from heapcheck.datalog.fixpoint import least_extension
from heapcheck.datalog.restrictions import (
	check_bsr, check_bir, bsr_sentences, bir_sentences, bsr_at,
	Verdict, BsrWitness, BirWitness
)
from heapcheck.datalog.cardinality import LinearConstraint, CardinalitySystem, eval_delta, valuation
from heapcheck.datalog.spec import SpecFormula, SatReport, spec_sat_on, empty_spec, MAX_PRIVILEGED
