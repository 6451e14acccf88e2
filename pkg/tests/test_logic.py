# Test formulas, structures and their evaluation

import random

import functions
import pandas as pd
from heapcheck.errors import SpecError, UnknownSymbol
from heapcheck.logic import (
	Signature, NULL, X, Y, Const, TRUE, FALSE, UnaryAtom, BinaryAtom, Eq, Not, And, Or,
	Forall, Exists, Count, conj, disj, walk, free_vars, to_string, Structure, Draft,
	structure_frame, evaluate, evaluate3, nnf, check_restricted
)
from heapcheck.logic.formula import ATOMS


SIG = Signature(
	ext_unary={"p", "q"},
	ext_binary={"r": True, "s": False},
	constants=(NULL, "a"),
)
RNG_SEED = 20240611
N_RANDOM = 200

p = UnaryAtom("p", X)
q = UnaryAtom("q", X)


def test_printing():
	f = Forall(X, p)
	assert to_string(f) == "forall u. p(u)"
	f = Forall(X, Exists(Y, BinaryAtom("r", X, Y)))
	assert to_string(f) == "forall u. exists v. r(u, v)"
	f = Forall(X, Or((Not(p), Exists(Y, BinaryAtom("r", X, Y)))))
	assert to_string(f) == "forall u. !p(u) || (exists v. r(u, v))", to_string(f)
	f = Count(">=", 2, X, p)
	assert to_string(f) == "exists>=2 u. p(u)"
	f = Forall(X, Not(Eq(X, Const("h"))))
	assert to_string(f) == "forall u. u != h"
	f = Forall(X, UnaryAtom("u", X))
	assert to_string(f) == "forall u1. u(u1)", "Display names must avoid predicate names."


def test_connective_flattening():
	assert conj() == TRUE
	assert disj() == FALSE
	assert conj(TRUE, p, conj(q, p)) == And((p, q, p))
	assert conj(p, FALSE, q) == FALSE
	assert disj(p, TRUE) == TRUE
	assert conj(p) == p
	assert free_vars(Exists(Y, BinaryAtom("r", X, Y))) == {X}


def test_counting_against_expansion():
	rng = random.Random(RNG_SEED)
	checked = 0
	for _ in range(N_RANDOM):
		M = functions.random_structure(rng, SIG, rng.randint(1, 5))
		var = rng.choice((X, Y))
		other = "y" if var == X else "x"
		body = functions.random_formula(rng, SIG, 2, free=(X, Y))
		f = Count(rng.choice((">=", "=", "<=")), rng.randint(0, 3), var, body)
		for e in M.domain:
			env = {other: e}
			expected = functions.count_by_expansion(M, f, env)
			assert evaluate(M, f, env) == expected, \
				f"{to_string(f)} with {other}={e} disagrees with its expansion on\n{M}"
			checked += 1
	assert checked >= N_RANDOM


def test_nnf():
	rng = random.Random(RNG_SEED + 1)
	for _ in range(N_RANDOM):
		M = functions.random_structure(rng, SIG, rng.randint(1, 4))
		f = functions.random_formula(rng, SIG, 3)
		g = nnf(Not(f))
		for h in walk(g):
			if isinstance(h, Not):
				assert isinstance(h.body, ATOMS), f"Negation above an atom in {to_string(g)}"
		assert evaluate(M, g) == (not evaluate(M, f)), f"nnf changed the meaning of !({to_string(f)})"


def test_nnf_counting_duals():
	assert nnf(Not(Count(">=", 2, X, p))) == Count("<=", 1, X, p)
	assert nnf(Not(Count("<=", 2, X, p))) == Count(">=", 3, X, p)
	assert nnf(Not(Count("=", 0, X, p))) == Count(">=", 1, X, p)
	assert nnf(Not(Count("=", 2, X, p))) == Or((Count("<=", 1, X, p), Count(">=", 3, X, p)))
	assert nnf(Not(Count(">=", 0, X, p))) == FALSE


def test_kleene_agrees_when_decided():
	rng = random.Random(RNG_SEED + 2)
	open_names = SIG.ext_unary | set(SIG.ext_binary)
	for _ in range(N_RANDOM):
		M = functions.random_structure(rng, SIG, rng.randint(1, 4))
		f = functions.random_formula(rng, SIG, 3)
		truth = evaluate(M, f)
		assert evaluate3(M, f) == truth, "Fully decided structures must evaluate classically."
		frontier = rng.randint(0, M.size)
		v = evaluate3(M, f, frontier=frontier, open_names=open_names)
		assert v is None or v == truth, \
			f"{to_string(f)} is {v} below frontier {frontier} but {truth} on\n{M}"


def test_kleene_partial():
	draft = Draft(3, {NULL: 0}, unary=["p"])
	draft.unary["p"].add(1)
	some = Exists(X, p)
	none = Forall(X, Not(p))
	assert evaluate3(draft, some, frontier=1, open_names={"p"}) is None
	assert evaluate3(draft, none, frontier=1, open_names={"p"}) is None
	assert evaluate3(draft, some, frontier=2, open_names={"p"}) is True
	assert evaluate3(draft, none, frontier=2, open_names={"p"}) is False
	assert evaluate3(draft, Count("<=", 0, X, p), frontier=2, open_names={"p"}) is False
	assert evaluate3(draft, some, frontier=0, open_names={"q"}) is True, \
		"Atoms over closed predicates are always decided."


def test_restricted_occurrences():
	sig = Signature(
		ext_unary={"p"}, ext_binary={"r": True}, constants=(NULL, "h"),
		int_unary={"a", "b", "c"}, owner={"a": 0, "b": 1, "c": 2},
	)
	c = UnaryAtom("c", X)
	assert check_restricted(Exists(X, c), sig)
	assert check_restricted(Forall(X, Not(c)), sig)
	assert check_restricted(Forall(X, UnaryAtom("c", Const("h"))), sig)
	assert check_restricted(Exists(X, Count(">=", 2, Y, conj(UnaryAtom("c", Y), BinaryAtom("r", X, Y)))), sig)
	assert not check_restricted(Forall(X, c), sig)
	assert not check_restricted(Exists(X, Not(c)), sig)
	assert not check_restricted(Exists(X, Count("<=", 1, Y, UnaryAtom("c", Y))), sig)
	assert check_restricted(Not(Exists(X, c)), sig), "Negation turns the quantifier universal."
	assert not check_restricted(Not(Forall(X, c)), sig)
	assert check_restricted(Forall(X, c), sig, privileged={2})
	verdict = check_restricted(Forall(X, UnaryAtom("a", X)), sig)
	assert verdict.owners == {0}
	try:
		check_restricted(c, sig, privileged={0, 1, 2})
	except AssertionError:
		pass
	else:
		raise AssertionError("Failed to catch three privileged programs.")


def test_signature_validation():
	try:
		Signature(ext_unary={"p"}, ext_binary={"p": True})
	except SpecError:
		pass
	else:
		raise AssertionError("Failed to catch a name with two roles.")
	try:
		Signature(int_unary={"list"})
	except SpecError:
		pass
	else:
		raise AssertionError("Failed to catch an intensional predicate without a program.")
	sig = Signature(constants=("h",))
	assert sig.constants == (NULL, "h"), "NULL must come first."
	assert sig.fresh("h") == "h1"
	assert sig.fresh("x") == "x"


def test_unknown_symbol():
	M = Structure(2, {NULL: 0})
	try:
		evaluate(M, Exists(X, UnaryAtom("nope", X)))
	except UnknownSymbol as e:
		assert e.name == "nope"
	else:
		raise AssertionError("Failed to catch an uninterpreted predicate.")
	try:
		evaluate(M, Eq(Const("h"), Const(NULL)))
	except KeyError:
		pass
	else:
		raise AssertionError("UnknownSymbol must also be a KeyError.")


def test_structure_identity():
	M = functions.list_and_cycle()
	assert Structure.from_dict(M.to_dict()) == M
	assert hash(Structure.from_dict(M.to_dict())) == hash(M)
	assert M.digest() == Structure.from_dict(M.to_dict()).digest()
	swapped = M.relabel([0, 2, 1, 3, 4, 5, 6, 7])
	assert swapped != M
	assert swapped.relabel([0, 2, 1, 3, 4, 5, 6, 7]) == M
	assert M.target("next", 3) == 0
	assert M.target("next", 0) is None
	assert M.predecessors("next", 4) == {7}
	assert M.with_spare(2).size == 10
	assert M.is_valid()


def test_structure_problems():
	M = Structure(3, {NULL: 0}, binary={"next": [(1, 2), (1, 0)]}, functional={"next"})
	assert any("out-degree" in s for s in M.problems())
	M = Structure(3, {NULL: 0}, binary={"next": [(0, 1)]}, functional={"next"})
	assert any("leaving NULL" in s for s in M.problems())
	assert M.is_valid(null_axiom=False)
	M = Structure(2, {NULL: 0, "h": 5})
	assert any("outside the domain" in s for s in M.problems())


def test_structure_frame():
	M = functions.list_and_cycle().with_unary("list", {0, 1, 2, 3})
	df = structure_frame(M)
	ref = pd.DataFrame(
		{
			"constants": ["NULL", "", "", "", "", "", "", ""],
			"list": [True, True, True, True, False, False, False, False],
			"next": pd.array([None, 2, 3, 0, 5, 6, 7, 4], dtype="Int64"),
		},
		index=pd.RangeIndex(8, name="node"),
	)
	unequal, msg = functions.compare_dfs(df, ref)
	assert not unequal, f"Structure frame test failed: {msg}"
