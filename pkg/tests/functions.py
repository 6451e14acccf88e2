# Functions
#
# Useful testing functions
import collections
import itertools
import os
import random

import networkx as nx
import pandas as pd

from heapcheck.datalog.clauses import Clause, DatalogProgram
from heapcheck.logic.evaluate import evaluate
from heapcheck.logic.formula import (
	X, Y, COMPARATORS, Const, TRUE, FALSE, UnaryAtom, BinaryAtom, Eq, Not, And, Or, Implies, Iff,
	Forall, Exists, Count, conj
)
from heapcheck.logic.signature import NULL
from heapcheck.logic.structure import Structure


# Acceptance-scale bounds only run when this is set
SLOW = os.environ.get("HEAPCHECK_SLOW", "") not in ("", "0")

LIST_AND_CYCLE_NEXT = [(1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]


def compare_dfs(df1: pd.DataFrame, df2: pd.DataFrame, ignore_index=False) -> [int, str]:
	if df1.shape != df2.shape:
		return 4, f"DF shapes are unequal: {df1.shape} != {df2.shape}"
	if not ignore_index and any(df1.columns != df2.columns):
		return 3, f"DF columns are unequal: {df1.columns} != {df2.columns}"
	if not ignore_index and any(df1.index != df2.index):
		return 2, "DF indices are unequal."
	unequal = [
		c1 for c1, c2 in zip(df1.columns, df2.columns)
		if not df1[c1].reset_index(drop=True).equals(df2[c2].reset_index(drop=True))
	]
	if not unequal:
		return 0, "The DFs are equal."
	df3 = pd.DataFrame(index=df1.index)
	for col in unequal:
		df3[col + " (1)"] = df1[col]
		df3[col + " (2)"] = df2[col]
	return 1, f"The following columns are unequal:\n{unequal}\n{df3}"


def list_and_cycle() -> Structure:
	"""A NULL-terminated list 1-2-3 next to the cycle 4-5-6-7"""
	return Structure(8, {NULL: 0}, binary={"next": LIST_AND_CYCLE_NEXT}, functional={"next"})


def meeting_lists() -> Structure:
	"""Left list from h1 and right list from h2 meeting at the non-constant node 4"""
	return Structure(
		5, {NULL: 0, "h1": 1, "h2": 3},
		binary={"left": [(1, 2), (2, 3), (3, 4), (4, 0)], "right": [(3, 4), (4, 0)]},
		functional={"left", "right"},
	)


# Random generators

def random_structure(rng: random.Random, sig, size: int, unary=None, null_axiom=True) -> Structure:
	"""Structure over `sig` with NULL on node 0 and everything else drawn at random

	`unary` overrides the labeled predicates, e.g. to label intensional ones too.
	"""
	constants = {c: 0 if c == NULL else rng.randrange(size) for c in sig.constants}
	unary = sorted(sig.ext_unary if unary is None else unary)
	labels = {p: {d for d in range(size) if rng.random() < 0.4} for p in unary}
	sources = [d for d in range(size) if not (null_axiom and d == 0)]
	binary = {}
	for r in sorted(sig.ext_binary):
		if sig.ext_binary[r]:
			pairs = set()
			for d in sources:
				t = rng.randrange(size + 1)
				if t < size:
					pairs.add((d, t))
		else:
			pairs = {(a, b) for a in sources for b in range(size) if rng.random() < 0.25}
		binary[r] = pairs
	return Structure(size, constants, labels, binary, sig.functional)


def random_guard(rng: random.Random, sig):
	atoms = [UnaryAtom(p, X) for p in sorted(sig.ext_unary)]
	atoms += [Eq(X, Const(c)) for c in sig.constants]
	parts = []
	for _ in range(rng.randint(0, 2)):
		a = rng.choice(atoms)
		parts.append(Not(a) if rng.random() < 0.3 else a)
	return conj(*parts)


def random_program(rng: random.Random, sig, heads, max_clauses=4, name="P") -> DatalogProgram:
	"""Up to `max_clauses` clauses whose heads and body predicates come from `heads`"""
	rels = sorted(sig.ext_binary)
	clauses = []
	for _ in range(rng.randint(1, max_clauses)):
		k = rng.randint(0, min(2, len(rels)))
		body = tuple((r, rng.choice(heads)) for r in rng.sample(rels, k))
		clauses.append(Clause(rng.choice(heads), random_guard(rng, sig), body))
	return DatalogProgram(name, tuple(clauses))


def random_atom(rng: random.Random, sig, free=()):
	terms = list(free) + [Const(c) for c in sig.constants]
	pick = rng.randrange(4)
	if pick == 0 and sig.ext_unary:
		return UnaryAtom(rng.choice(sorted(sig.ext_unary)), rng.choice(terms))
	if pick == 1 and sig.ext_binary:
		return BinaryAtom(rng.choice(sorted(sig.ext_binary)), rng.choice(terms), rng.choice(terms))
	if pick == 2:
		return Eq(rng.choice(terms), rng.choice(terms))
	return TRUE if rng.random() < 0.5 else FALSE


def random_formula(rng: random.Random, sig, depth: int, free=()):
	"""Formula whose free variables are among `free`"""
	if depth == 0 or rng.random() < 0.25:
		return random_atom(rng, sig, free)
	pick = rng.randrange(6)
	sub = lambda: random_formula(rng, sig, depth - 1, free)
	if pick == 0:
		return Not(sub())
	if pick == 1:
		return And((sub(), sub()))
	if pick == 2:
		return Or((sub(), sub()))
	if pick == 3:
		return Implies(sub(), sub())
	if pick == 4:
		return Iff(sub(), sub())
	var = rng.choice((X, Y))
	inner = tuple(sorted(set(free) | {var}, key=lambda v: v.name))
	body = random_formula(rng, sig, depth - 1, inner)
	kind = rng.randrange(3)
	if kind == 0:
		return Forall(var, body)
	if kind == 1:
		return Exists(var, body)
	return Count(rng.choice(COMPARATORS), rng.randint(0, 3), var, body)


# Oracles

def naive_least_extension(M: Structure, progs) -> Structure:
	"""Apply every clause at every node until nothing changes"""
	clauses = [c for P in progs for c in P.clauses]
	facts = {c.head: set(M.unary.get(c.head, ())) for c in clauses}
	changed = True
	while changed:
		changed = False
		for c in clauses:
			for d in M.domain:
				if d in facts[c.head] or not evaluate(M, c.guard, {"x": d}):
					continue
				if all(
					any((d, e) in M.binary[r] and e in facts.get(q, ()) for e in M.domain)
					for r, q in c.body
				):
					facts[c.head].add(d)
					changed = True
	unary = dict(M.unary)
	unary.update({p: frozenset(v) for p, v in facts.items()})
	return M.replace(unary=unary)


def count_by_expansion(M: Structure, f: Count, env: dict) -> bool:
	"""Counting quantifier through its first-order expansion over k distinct witnesses"""
	def holds(d):
		return evaluate(M, f.body, {**env, f.var.name: d})

	def at_least(m):
		return any(all(holds(d) for d in combo) for combo in itertools.combinations(M.domain, m))

	if f.cmp == ">=":
		return at_least(f.k)
	if f.cmp == "<=":
		return not at_least(f.k + 1)
	return at_least(f.k) and not at_least(f.k + 1)


def brute_force_structures(sig, n: int, null_axiom=True):
	"""Every structure of size `n` over unary and functional predicates, constants anywhere"""
	unary = sorted(sig.ext_unary)
	fun = sorted(sig.functional)
	assert not sig.relations, "Only functional binary predicates are supported."
	for consts in itertools.product(range(n), repeat=len(sig.constants)):
		placement = dict(zip(sig.constants, consts))
		null = placement[NULL]
		for masks in itertools.product(range(1 << n), repeat=len(unary)):
			labels = {p: {d for d in range(n) if m >> d & 1} for p, m in zip(unary, masks)}
			for targets in itertools.product(range(n + 1), repeat=len(fun) * n):
				binary = {f: set() for f in fun}
				ok = True
				for i, f in enumerate(fun):
					for d in range(n):
						t = targets[i * n + d]
						if t == n:
							continue
						if null_axiom and d == null:
							ok = False
						binary[f].add((d, t))
				if ok:
					yield Structure(n, placement, labels, binary, fun)


def structure_digraph(M: Structure) -> nx.DiGraph:
	g = nx.DiGraph()
	for d in M.domain:
		labels = tuple(sorted(p for p, v in M.unary.items() if d in v))
		g.add_node(d, label=(tuple(sorted(M.constants_at(d))), labels))
	for r in sorted(M.binary):
		for a, b in M.binary[r]:
			if g.has_edge(a, b):
				g[a][b]["rels"] = g[a][b]["rels"] + (r,)
			else:
				g.add_edge(a, b, rels=(r,))
	return g


def count_isomorphism_classes(structures) -> int:
	"""Number of classes under isomorphisms that fix every constant"""
	node_match = nx.algorithms.isomorphism.categorical_node_match("label", None)
	edge_match = nx.algorithms.isomorphism.categorical_edge_match("rels", None)
	reps = []
	for M in structures:
		g = structure_digraph(M)
		if not any(nx.is_isomorphic(g, h, node_match=node_match, edge_match=edge_match) for h in reps):
			reps.append(g)
	return len(reps)


def unreachable_allocated(heap: Structure, types, fields, variables):
	"""Breadth-first search from the variables along field edges"""
	seen = set()
	queue = collections.deque(heap.node_of(v) for v in variables)
	while queue:
		d = queue.popleft()
		if d in seen:
			continue
		seen.add(d)
		for f in fields:
			queue.extend(b for a, b in heap.binary.get(f, ()) if a == d)
	allocated = set()
	for t in types:
		allocated |= heap.unary.get(t, frozenset())
	return sorted(allocated - seen)
