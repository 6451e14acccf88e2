# Test the surface languages, the output formats and the command line

import json
import re

import functions
import pandas as pd
from assets import (
	LIST_AND_CYCLE_HEAP, ONE_FREE_CELL, SPEC_FILES, PROGRAM_FILES, INSTANCE_FILES, TRUE_SPEC, CIRCULAR_LIST_SPEC,
	LIST_SPEC, REPLACE_PROG, LEAK_NEW_PROG, ALIAS_INST, COPY_DIFFERS_INST
)
from heapcheck.bmc import mk_leak_instance
from heapcheck.cli import (
	ParseOptions, parse_formula, parse_spec, parse_program, parse_instance, load_spec, load_program,
	load_instance, print_spec, print_program, print_instance, emit_dot, emit_json, result_from_json, main
)
from heapcheck.cli.main import default_jobs
from heapcheck.errors import (
	HeapcheckSyntaxError, NoSuchField, UnknownVariable, TooManyVariables, CountTooLarge, SpecError, ConfigError
)
from heapcheck.logic import Signature, NULL, X, Y, BinaryAtom, Forall, Exists, Structure


DANGLING_PC = [
	"analyze", CIRCULAR_LIST_SPEC, REPLACE_PROG, "--kind", "dangling", "--x", "pc",
	"--instrument", "--prefix", "11", "--max-size", "4", "--spare", "1",
]
LEAK = ["analyze", TRUE_SPEC, LEAK_NEW_PROG, "--kind", "leak", "--max-size", "3"]
NODE_PROGRAM = "template node {\n\tnext: node;\n}\nvars x, z;\n\nprogram {\n\t%s\n}\n"
THREE_PROGRAMS = (
	"const h;\n"
	"program A {\n\ta(x) :- x = NULL.\n}\n"
	"program B {\n\tb(x) :- x = NULL.\n}\n"
	"program C {\n\tc(x) :- x = NULL.\n}\n"
)


def _expect(cls, fn, *args, **kwargs):
	try:
		fn(*args, **kwargs)
	except cls as e:
		return e
	raise AssertionError(f"Failed to catch {cls.__name__}.")


def test_parse_formula():
	sig = Signature(ext_binary={"next": True}, constants=(NULL, "h"))
	f = parse_formula("forall u. exists v. next(u, v)", sig)
	assert f == Forall(X, Exists(Y, BinaryAtom("next", X, Y)))
	g = parse_formula("forall a. exists b. next(a, b)", sig)
	assert g == f, "Bound names take the two variables in order of need."


def test_parse_errors():
	_expect(NoSuchField, parse_program, NODE_PROGRAM % "x := z.missing;")
	_expect(UnknownVariable, parse_program, NODE_PROGRAM % "x := w;")
	_expect(HeapcheckSyntaxError, parse_program, NODE_PROGRAM % "dispose cell(x);")
	e = _expect(HeapcheckSyntaxError, parse_program, NODE_PROGRAM % "assume(exists u. next(x, u));")
	assert e.line == 7, f"Expected the guard error on line 7; got {e.line}"
	assert parse_program(NODE_PROGRAM % "assume(forall u. !next(x, u));")
	_expect(
		TooManyVariables, parse_spec,
		"fun next;\nassert forall u. forall v. exists w. next(u, v) && next(v, w) && next(w, u);\n"
	)
	counting = "fun next;\nassert exists>=100 u. next(u, u);\n"
	_expect(CountTooLarge, parse_spec, counting)
	assert parse_spec(counting, ParseOptions(max_count=100)).matrix is not None
	e = _expect(HeapcheckSyntaxError, parse_spec, "const h;\nassert list(h) &&;\n")
	assert e.line == 2, f"Expected the error on line 2; got {e.line}"
	_expect(HeapcheckSyntaxError, parse_spec, "const h';\n")
	_expect(UnknownVariable, parse_spec, "const h;\nassert g = NULL;\n")


def test_third_program_restriction():
	assert parse_spec(THREE_PROGRAMS + "assert exists u. c(u);\n")
	_expect(SpecError, parse_spec, THREE_PROGRAMS + "assert forall u. c(u);\n")


def test_round_trips():
	for path in SPEC_FILES:
		spec = load_spec(path)
		assert parse_spec(print_spec(spec)) == spec, f"{path} does not survive printing"
	for path in PROGRAM_FILES:
		bp = load_program(path)
		assert parse_program(print_program(bp)) == bp, f"{path} does not survive printing"
	for path in INSTANCE_FILES:
		inst = load_instance(path).instance()
		assert parse_instance(print_instance(inst)).instance(inst.kind) == inst, f"{path} does not survive printing"
	inst = mk_leak_instance(load_spec(TRUE_SPEC), load_program(LEAK_NEW_PROG))
	assert parse_instance(print_instance(inst)).instance(inst.kind) == inst


def test_dot():
	text = emit_dot(functions.list_and_cycle())
	assert text.count("->") == 7
	assert len(re.findall(r"^\s*n\d+ \[", text, flags=re.M)) == 8
	text = emit_dot(Structure(1, {NULL: 0}), name="empty")
	assert text.count("->") == 0
	assert len(re.findall(r"^\s*n\d+ \[", text, flags=re.M)) == 1
	assert "NULL" in text


def test_jobs_environment(monkeypatch, capsys):
	assert default_jobs({}) == 1
	assert default_jobs({"HEAPCHECK_JOBS": "3"}) == 3
	_expect(ConfigError, default_jobs, {"HEAPCHECK_JOBS": "0"})
	monkeypatch.setenv("HEAPCHECK_JOBS", "abc")
	assert main(["sat", LIST_SPEC, "--max-size", "2"]) == 2
	assert "HEAPCHECK_JOBS" in capsys.readouterr().err


def test_input_errors(tmp_path, capsys):
	assert main(["sat", str(tmp_path / "missing.spec")]) == 2
	bad = tmp_path / "bad.spec"
	bad.write_text("const h;\nassert list(h) &&;\n")
	assert main(["sat", str(bad)]) == 2
	assert "bad.spec:2" in capsys.readouterr().err
	assert main(["sat", LIST_SPEC, "--max-size", "2", "--min-size", "3"]) == 2
	state = tmp_path / "state.json"
	state.write_text(json.dumps({"size": 2, "unary": {"t": []}}))
	assert main(["run", LEAK_NEW_PROG, str(state)]) == 2
	assert "constants" in capsys.readouterr().err
	state.write_text(json.dumps({"size": 0, "constants": {NULL: 0}}))
	assert main(["render", str(state)]) == 2


def test_dangling_command(capsys):
	assert main(DANGLING_PC + ["--jobs", "1"]) == 0
	serial = capsys.readouterr().out
	data = json.loads(serial)
	assert data["status"] == "sat"
	assert data["kind"] == "dangling"
	assert data["pre_state"]["constants"] == {NULL: 0, "c": 1, "nc": 0, "pc": 0}
	assert data["pre_state"]["spare"] == [2]
	assert emit_json(result_from_json(serial.rstrip("\n"))) == serial.rstrip("\n")
	assert main(DANGLING_PC + ["--jobs", "4"]) == 0
	assert capsys.readouterr().out == serial, "Worker count must not change the answer."


def test_leak_command(capsys):
	assert main(LEAK + ["--jobs", "1"]) == 0
	serial = capsys.readouterr().out
	data = json.loads(serial)
	assert data["leaked"] == [1]
	post = Structure.from_dict(data["post_state"])
	assert functions.unreachable_allocated(post, ["t'"], ["next'"], ["x'"]) == [1]
	assert main(LEAK + ["--jobs", "4"]) == 0
	assert capsys.readouterr().out == serial


def test_check_command(tmp_path, capsys):
	assert main(["check", ALIAS_INST, "--max-size", "3", "--dot", str(tmp_path)]) == 0
	assert (tmp_path / "pre.dot").exists() and (tmp_path / "post.dot").exists()
	assert main(["check", COPY_DIFFERS_INST, "--max-size", "3"]) == 1
	assert "\"status\": \"exhausted\"" in capsys.readouterr().out


def test_sat_command(capsys):
	assert main(["sat", LIST_SPEC, "--max-size", "2"]) == 0
	data = json.loads(capsys.readouterr().out)
	assert data["status"] == "sat"
	M = Structure.from_dict(data["structure"])
	assert M.size == 2
	assert M.node_of("h") == 1
	assert main(["sat", LIST_SPEC, "--max-size", "2", "--via-bmc"]) == 0


def test_prefixes_command(tmp_path, capsys):
	csv = tmp_path / "sweep.csv"
	argv = ["prefixes", REPLACE_PROG, CIRCULAR_LIST_SPEC, "--max-size", "3", "--spare", "1", "--csv", str(csv)]
	assert main(argv) == 0
	assert "[0]-[10]" in capsys.readouterr().out
	df = pd.read_csv(csv, index_col="check")
	assert df.index.tolist() == [2, 4, 7, 9, 11, 13]
	assert df.loc[11, "status"] == "sat"


def test_run_command(capsys):
	assert main(["run", LEAK_NEW_PROG, ONE_FREE_CELL]) == 0
	data = json.loads(capsys.readouterr().out)
	assert len(data["branches"]) == 1
	assert data["branches"][0]["state"]["unary"]["t"] == [1]
	assert data["failures"] == []


def test_render_command(tmp_path, capsys):
	assert main(["render", LIST_AND_CYCLE_HEAP, "--table"]) == 0
	out = capsys.readouterr().out
	assert out.startswith("heap:")
	assert "node" in out
	dot = tmp_path / "heap.dot"
	assert main(["render", LIST_AND_CYCLE_HEAP, "--dot", str(dot)]) == 0
	assert dot.read_text().count("->") == 7


def test_list_corpus(capsys):
	assert main(["list-corpus"]) == 0
	names = capsys.readouterr().out.split()
	assert "replace.prog" in names
	assert "circular_list.spec" in names
