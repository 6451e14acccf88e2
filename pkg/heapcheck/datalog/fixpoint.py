"""
fixpoint

Least extension of a structure with respect to monadic Datalog programs
"""

import collections
import logging
import typing

from heapcheck.datalog.clauses import DatalogProgram
from heapcheck.logic.evaluate import evaluate
from heapcheck.logic.formula import TRUE
from heapcheck.logic.structure import Structure


logger = logging.getLogger(__name__)


def least_extension(M: Structure, progs: typing.Sequence[DatalogProgram]) -> Structure:
	"""Enrich `M` with the least fixpoint of the union of `progs`

	Semi-naive evaluation: a clause is only revisited for the sources of
	edges into a node that gained a body predicate in the last round.
	Facts already present in `M` for a head predicate are kept as seeds.

	Parameters:
	-----------
	M: Structure
		Interprets every extensional name the programs use.

	progs: list of DatalogProgram

	Returns:
	--------
	Structure
		`M` plus one unary relation per intensional predicate.
	"""
	clauses = [c for p in progs for c in p.clauses]
	if not clauses:
		return M
	heads = sorted({c.head for c in clauses})
	facts = {p: set(M.unary.get(p, ())) for p in heads}
	guarded = []
	for c in clauses:
		if c.guard == TRUE:
			guarded.append(None)
		else:
			guarded.append(frozenset(d for d in M.domain if evaluate(M, c.guard, {"x": d})))
	watch = collections.defaultdict(list)
	for i, c in enumerate(clauses):
		for r, q in c.body:
			watch[q].append((i, r))

	def fires(i: int, d: int) -> bool:
		c = clauses[i]
		if d in facts[c.head]:
			return False
		if guarded[i] is not None and d not in guarded[i]:
			return False
		for r, q in c.body:
			known = facts.get(q, ())
			if not any(e in known for e in M.successors(r, d)):
				return False
		return True

	delta = set()
	for p in heads:
		delta.update((p, d) for d in facts[p])
	for i, c in enumerate(clauses):
		if c.body:
			continue
		for d in (M.domain if guarded[i] is None else sorted(guarded[i])):
			if d not in facts[c.head]:
				facts[c.head].add(d)
				delta.add((c.head, d))
	rounds = 0
	while delta:
		rounds += 1
		fresh = set()
		for q, e in delta:
			for i, r in watch.get(q, ()):
				head = clauses[i].head
				for d in M.predecessors(r, e):
					if (head, d) not in fresh and fires(i, d):
						fresh.add((head, d))
		for p, d in fresh:
			facts[p].add(d)
		delta = fresh
	logger.debug("Least extension reached after %d rounds", rounds)
	unary = dict(M.unary)
	for p in heads:
		unary[p] = frozenset(facts[p])
	return M.replace(unary=unary)
