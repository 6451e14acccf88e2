"""
main

Command-line interface

Exit codes: 0 when a solution or model was found, 1 when the bounded
search was exhausted, 2 on input errors.
"""

import argparse
import json
import logging
import os
import sys
import typing

from heapcheck import corpus
from heapcheck._version import __version__
from heapcheck.bmc.analyses import (
	mk_dangling_instance, mk_alias_instance, mk_must_alias_query, mk_intersection_instance,
	mk_leak_instance, solution_leaks
)
from heapcheck.bmc.instance import BmcResult, bmc_solve, sat_instance
from heapcheck.bmc.report import prefix_sweep
from heapcheck.cli.emit import emit_dot, emit_json, state_dict
from heapcheck.cli.parser import ParseOptions, load_instance, load_program, load_spec
from heapcheck.errors import HeapcheckError, ConfigError
from heapcheck.logic.structure import Structure, structure_frame
from heapcheck.modelfind.config import SearchConfig
from heapcheck.modelfind.search import find_model
from heapcheck.program.instrument import instrument
from heapcheck.program.semantics import run
from heapcheck.program.state import State


logger = logging.getLogger(__name__)

EXIT_SAT = 0
EXIT_EXHAUSTED = 1
EXIT_INPUT = 2

JOBS_ENV = "HEAPCHECK_JOBS"
KINDS = ("dangling", "alias", "must-alias", "intersect", "leak")


def default_jobs(environ: typing.Mapping[str, str] = os.environ) -> int:
	"""Worker count from HEAPCHECK_JOBS, or 1"""
	raw = environ.get(JOBS_ENV)
	if raw is None or raw == "":
		return 1
	try:
		jobs = int(raw)
	except ValueError as e:
		raise ConfigError(f"{JOBS_ENV} must be a positive integer; got {raw!r}") from e
	if jobs < 1:
		raise ConfigError(f"{JOBS_ENV} must be a positive integer; got {raw!r}")
	return jobs


def _search_options(p: argparse.ArgumentParser):
	g = p.add_argument_group("search bounds")
	g.add_argument("--max-size", type=int, default=4, help="largest pre-state size [default: 4]")
	g.add_argument("--min-size", type=int, default=None, help="smallest pre-state size [default: one node per constant]")
	g.add_argument("--spare", type=int, default=0, help="unallocated cells added to every pre-state")
	g.add_argument("--jobs", type=int, default=None, help=f"worker processes [default: ${JOBS_ENV} or 1]")
	g.add_argument("--nondeterministic", action="store_true", help="return the first solution any worker finds")
	g.add_argument("--no-null-axiom", action="store_true", help="allow NULL to emit edges")
	g.add_argument("--edge-cap", type=int, default=None, help="tuples per non-functional relation")
	g.add_argument("--max-count", type=int, default=64, help="largest counting bound accepted [default: 64]")


def _output_options(p: argparse.ArgumentParser):
	p.add_argument("--dot", metavar="DIR", help="also write pre.dot and post.dot into DIR")


def build_parser() -> argparse.ArgumentParser:
	parser = argparse.ArgumentParser(prog="heapcheck", description="Bounded model checking of heap programs")
	parser.add_argument("--version", action="version", version=f"heapcheck {__version__}")
	parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
	sub = parser.add_subparsers(dest="command", required=True)

	p = sub.add_parser("check", help="solve an instance file")
	p.add_argument("instance")
	p.add_argument("--instrument", action="store_true", help="insert allocation checks first")
	_search_options(p)
	_output_options(p)

	p = sub.add_parser("analyze", help="build and solve an analysis instance")
	p.add_argument("spec")
	p.add_argument("program")
	p.add_argument("--kind", choices=KINDS, required=True)
	p.add_argument("--x", help="variable to test (dangling, alias, must-alias)")
	p.add_argument("--y", help="second variable (alias, must-alias)")
	p.add_argument("--shape1", help="first shape predicate (intersect)")
	p.add_argument("--shape2", help="second shape predicate (intersect)")
	p.add_argument("--negate", action="store_true", help="ask the complementary question")
	p.add_argument("--instrument", action="store_true", help="insert allocation checks first")
	p.add_argument("--prefix", type=int, default=None, metavar="END", help="only run actions [0]..[END-1]")
	_search_options(p)
	_output_options(p)

	p = sub.add_parser("prefixes", help="check every allocation test of a program")
	p.add_argument("program")
	p.add_argument("spec")
	p.add_argument("--include-entry", action="store_true", help="also check the test at index 0")
	p.add_argument("--csv", metavar="FILE", help="write the table as CSV")
	_search_options(p)

	p = sub.add_parser("sat", help="find a model of a specification")
	p.add_argument("spec")
	p.add_argument("--via-bmc", action="store_true", help="solve the trivial model-checking instance instead")
	_search_options(p)

	p = sub.add_parser("run", help="execute a program on a state file")
	p.add_argument("program")
	p.add_argument("state")
	p.add_argument("--instrument", action="store_true")

	p = sub.add_parser("render", help="draw a state or the states of a result")
	p.add_argument("file")
	p.add_argument("--dot", metavar="FILE", help="write DOT here instead of stdout")
	p.add_argument("--table", action="store_true", help="print the per-node table instead")

	sub.add_parser("list-corpus", help="list the shipped example files")
	return parser


def configure_logging(verbosity: int):
	level = logging.WARNING
	if verbosity == 1:
		level = logging.INFO
	elif verbosity >= 2:
		level = logging.DEBUG
	logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def search_config(args: argparse.Namespace) -> SearchConfig:
	jobs = args.jobs if args.jobs is not None else default_jobs()
	try:
		return SearchConfig(
			max_domain=args.max_size,
			min_domain=args.min_size,
			spare_cells=args.spare,
			parallel_width=jobs,
			deterministic=not args.nondeterministic,
			null_axiom=not args.no_null_axiom,
			edge_cap=args.edge_cap,
		)
	except AssertionError as e:
		raise ConfigError(str(e)) from e


def parse_options(args: argparse.Namespace) -> ParseOptions:
	return ParseOptions(
		max_count=getattr(args, "max_count", 64),
		null_axiom=not getattr(args, "no_null_axiom", False),
	)


def _write_dot(result: BmcResult, directory: typing.Optional[str]):
	if directory is None or not result.sat:
		return
	os.makedirs(directory, exist_ok=True)
	for name, state in (("pre", result.solution.pre_state), ("post", result.solution.post_state)):
		with open(os.path.join(directory, f"{name}.dot"), "w") as f:
			f.write(emit_dot(state, name))


def _finish(result: BmcResult, args: argparse.Namespace) -> int:
	print(emit_json(result))
	_write_dot(result, getattr(args, "dot", None))
	return EXIT_SAT if result.sat else EXIT_EXHAUSTED


def cmd_check(args) -> int:
	source = load_instance(args.instance, parse_options(args))
	if args.instrument:
		source.program = instrument(source.program)
	return _finish(bmc_solve(source.instance(), search_config(args)), args)


def _require(args, *names: str):
	missing = [n for n in names if getattr(args, n) is None]
	if missing:
		raise ConfigError(f"--kind {args.kind} needs {', '.join('--' + n for n in missing)}")


def cmd_analyze(args) -> int:
	options = parse_options(args)
	pre = load_spec(args.spec, options)
	bp = load_program(args.program, options)
	if args.instrument:
		bp = instrument(bp)
	if args.prefix is not None:
		bp = bp.prefix(args.prefix)
	cfg = search_config(args)
	kind = args.kind
	if kind == "dangling":
		_require(args, "x")
		inst = mk_dangling_instance(pre, bp, args.x, args.negate)
	elif kind == "alias":
		_require(args, "x", "y")
		inst = mk_alias_instance(pre, bp, args.x, args.y, args.negate)
	elif kind == "must-alias":
		_require(args, "x", "y")
		inst = mk_must_alias_query(pre, bp, args.x, args.y)
	elif kind == "intersect":
		_require(args, "shape1", "shape2")
		inst = mk_intersection_instance(pre, bp, args.shape1, args.shape2, args.negate)
	else:
		inst = mk_leak_instance(pre, bp)
	result = bmc_solve(inst, cfg)
	if kind == "leak" and result.sat:
		result.leaked = solution_leaks(result, bp)
		logger.info("leaked nodes: %s", result.leaked)
	if kind == "must-alias":
		logger.info("%s and %s %s", args.x, args.y,
			"may differ" if result.sat else f"alias on every run up to size {cfg.max_domain}")
	return _finish(result, args)


def cmd_prefixes(args) -> int:
	options = parse_options(args)
	bp = instrument(load_program(args.program, options))
	pre = load_spec(args.spec, options)
	df = prefix_sweep(bp, pre, search_config(args), args.include_entry)
	if args.csv:
		df.to_csv(args.csv)
	print(df.to_string())
	return EXIT_SAT if (df["status"] == "sat").any() else EXIT_EXHAUSTED


def cmd_sat(args) -> int:
	spec = load_spec(args.spec, parse_options(args))
	cfg = search_config(args)
	if args.via_bmc:
		return _finish(bmc_solve(sat_instance(spec), cfg), args)
	result = find_model(spec, cfg)
	data = {
		"status": "sat" if result.found else "exhausted",
		"bound": result.bound,
		"exhausted_at": result.exhausted_at,
		"structure": result.structure.to_dict() if result.found else None,
		"warnings": list(result.warnings),
	}
	print(json.dumps(data, sort_keys=True, indent=2))
	return EXIT_SAT if result.found else EXIT_EXHAUSTED


def _read_json(path: str) -> dict:
	try:
		with open(path, "r") as f:
			return json.load(f)
	except json.JSONDecodeError as e:
		raise ConfigError(f"{path}: not a JSON file ({e})") from e


def _structure(path: str, data) -> Structure:
	try:
		return Structure.from_dict(data)
	except KeyError as e:
		raise ConfigError(f"{path}: state is missing {e}") from e
	except (TypeError, ValueError, AssertionError) as e:
		raise ConfigError(f"{path}: malformed state ({e})") from e


def cmd_run(args) -> int:
	bp = load_program(args.program)
	if args.instrument:
		bp = instrument(bp)
	heap = _structure(args.state, _read_json(args.state))
	state = State(heap, bp.decl.types)
	problems = state.problems()
	if problems:
		raise ConfigError(f"{args.state}: invalid state: {'; '.join(problems)}")
	result = run(state, bp.actions, bp.decl)
	data = {
		"branches": [
			{"state": state_dict(end), "trace": [st.to_dict() for st in trace]}
			for end, trace in result.branches
		],
		"failures": [
			{"kind": f.kind, "index": f.index, "action": str(f.action), "detail": f.detail}
			for f in result.failures
		],
	}
	print(json.dumps(data, sort_keys=True, indent=2))
	return EXIT_SAT if result.branches else EXIT_EXHAUSTED


def cmd_render(args) -> int:
	data = _read_json(args.file)
	if "size" in data:
		states = [("heap", _structure(args.file, data))]
	else:
		states = [(k, _structure(args.file, data[k])) for k in ("pre_state", "post_state") if data.get(k)]
	if args.table:
		for name, M in states:
			print(f"{name}:")
			print(structure_frame(M).to_string())
		return EXIT_SAT
	text = "\n".join(emit_dot(M, name) for name, M in states)
	if args.dot:
		with open(args.dot, "w") as f:
			f.write(text)
	else:
		print(text)
	return EXIT_SAT


def cmd_list_corpus(args) -> int:
	for name in corpus.names():
		print(name)
	return EXIT_SAT


COMMANDS = {
	"check": cmd_check,
	"analyze": cmd_analyze,
	"prefixes": cmd_prefixes,
	"sat": cmd_sat,
	"run": cmd_run,
	"render": cmd_render,
	"list-corpus": cmd_list_corpus,
}


def main(argv: typing.Sequence[str] = None) -> int:
	args = build_parser().parse_args(argv)
	configure_logging(args.verbose)
	try:
		return COMMANDS[args.command](args)
	except (HeapcheckError, OSError) as e:
		print(f"heapcheck: {e}", file=sys.stderr)
		return EXIT_INPUT
