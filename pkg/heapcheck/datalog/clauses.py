"""
clauses

Monadic Datalog clauses and programs
"""

import dataclasses
import typing

from heapcheck.errors import SpecError
from heapcheck.logic.formula import (
	Formula, TRUE, X, Y, UnaryAtom, BinaryAtom, Eq, Not, And, Implies, Forall, Exists,
	conj, walk, constants, free_vars, is_quantifier_free, predicates, to_string
)
from heapcheck.logic.signature import Signature


BodyItem = typing.Tuple[str, str]


@dataclasses.dataclass(frozen=True)
class Clause:
	"""head(x) :- guard(x), r_1(x, y_1), q_1(y_1), ..., r_l(x, y_l), q_l(y_l).

	Parameters:
	-----------
	head: str
		Intensional predicate defined by the clause.

	guard: Formula; optional
		Quantifier-free extensional condition on the head variable x and
		constants. [Default: TRUE]

	body: tuple of (str, str)
		Pairs (r_i, q_i) of a binary extensional predicate and an
		intensional predicate. Each pair has its own variable.
	"""
	head: str
	guard: Formula = TRUE
	body: typing.Tuple[BodyItem, ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "body", tuple(tuple(item) for item in self.body))
		rels = [r for r, _ in self.body]
		if len(rels) != len(set(rels)):
			raise SpecError(f"Clause for {self.head} uses a binary predicate twice: {rels}")
		if not is_quantifier_free(self.guard):
			raise SpecError(f"Guard of clause for {self.head} is not quantifier-free.")
		if free_vars(self.guard) - {X}:
			raise SpecError(f"Guard of clause for {self.head} mentions variables other than the head variable.")
		if any(isinstance(g, BinaryAtom) for g in walk(self.guard)):
			raise SpecError(f"Guard of clause for {self.head} may not contain binary atoms.")

	def body_formula(self) -> Formula:
		"""Guard and body as a C2 formula in x"""
		parts = [self.guard]
		for r, q in self.body:
			parts.append(Exists(Y, And((BinaryAtom(r, X, Y), UnaryAtom(q, Y)))))
		return conj(*parts)

	def to_string(self) -> str:
		taken = constants(self.guard) | predicates(self.guard) | {self.head}
		taken |= {n for item in self.body for n in item}
		pool = [n for n in ("x", "y", "z", "w") if n not in taken]
		i = 1
		while len(pool) < len(self.body) + 1:
			if f"v{i}" not in taken:
				pool.append(f"v{i}")
			i += 1
		u, vs = pool[0], pool[1:]
		names = (u, vs[0] if vs else u + "1")
		parts = []
		for g in (self.guard.args if isinstance(self.guard, And) else (self.guard,)):
			if g == TRUE:
				continue
			text = to_string(g, names)
			simple = isinstance(g, (UnaryAtom, Eq)) or (isinstance(g, Not) and isinstance(g.body, (UnaryAtom, Eq)))
			parts.append(text if simple else f"({text})")
		for (r, q), v in zip(self.body, vs):
			parts.append(f"{r}({u}, {v}), {q}({v})")
		tail = " :- " + ", ".join(parts) if parts else ""
		return f"{self.head}({u}){tail}."

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class DatalogProgram:
	name: str
	clauses: typing.Tuple[Clause, ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "clauses", tuple(self.clauses))

	def intensional(self) -> typing.FrozenSet[str]:
		return frozenset(c.head for c in self.clauses)

	def edge_sig(self) -> typing.FrozenSet[str]:
		"""Binary predicates mentioned in clause bodies"""
		return frozenset(r for c in self.clauses for r, _ in c.body)

	def body_predicates(self) -> typing.FrozenSet[str]:
		return frozenset(q for c in self.clauses for _, q in c.body)

	def guard_predicates(self) -> typing.FrozenSet[str]:
		return frozenset(p for c in self.clauses for p in predicates(c.guard))

	def validate(self, sig: Signature):
		"""Check the clauses against a signature"""
		for p in self.intensional() | self.body_predicates():
			if p not in sig.int_unary:
				raise SpecError(f"Program {self.name}: {p} is not an intensional predicate.")
		for r in self.edge_sig():
			if r not in sig.ext_binary:
				raise SpecError(f"Program {self.name}: {r} is not a binary extensional predicate.")
		for p in self.guard_predicates():
			if p not in sig.ext_unary:
				raise SpecError(f"Program {self.name}: guard predicate {p} is not unary extensional.")
		for c in self.clauses:
			missing = constants(c.guard) - set(sig.constants)
			if missing:
				raise SpecError(f"Program {self.name}: unknown constants {sorted(missing)} in a guard.")

	def union(self, other: "DatalogProgram", name: str = None) -> "DatalogProgram":
		return DatalogProgram(name or f"{self.name}+{other.name}", self.clauses + other.clauses)

	def to_string(self) -> str:
		lines = [f"program {self.name} {{"]
		lines.extend("\t" + c.to_string() for c in self.clauses)
		lines.append("}")
		return "\n".join(lines)

	def __str__(self):
		return self.to_string()


def universal_closure(P: DatalogProgram) -> Formula:
	"""Two-variable sentence stating that every clause of `P` is closed

	Each clause becomes forall x ((guard(x) and the body conjuncts) -> head(x)),
	every body conjunct reusing the single variable y.
	"""
	parts = []
	for c in P.clauses:
		antecedent = c.body_formula()
		head = UnaryAtom(c.head, X)
		if antecedent == TRUE:
			parts.append(Forall(X, head))
		else:
			parts.append(Forall(X, Implies(antecedent, head)))
	return conj(*parts)
