"""
emit

DOT renderings of heaps and the JSON result format
"""

import json
import typing

from graphviz import Digraph

from heapcheck.bmc.instance import BmcResult, Solution
from heapcheck.bmc.rename import prime
from heapcheck.cli.parser import parse_program
from heapcheck.logic.structure import Structure
from heapcheck.program.semantics import TraceStep
from heapcheck.program.state import State


def _node_label(M: Structure, d: int) -> str:
	lines = [str(d)]
	consts = M.constants_at(d)
	if consts:
		lines.append(", ".join(consts))
	labels = sorted(p for p, nodes in M.unary.items() if d in nodes)
	if labels:
		lines.append(" ".join(labels))
	# DOT line break inside a quoted label
	return "\\n".join(lines)


def heap_graph(M: typing.Union[State, Structure], name: str = "heap") -> Digraph:
	"""One node per domain element and one labeled edge per binary tuple

	Nodes are labeled with their index, the constants naming them and the
	unary predicates (types, labels, intensional predicates) holding there.
	"""
	if isinstance(M, State):
		M = M.heap
	graph = Digraph(name=name)
	graph.attr("node", shape="box")
	for d in M.domain:
		graph.node(f"n{d}", _node_label(M, d))
	for r in sorted(M.binary):
		for a, b in sorted(M.binary[r]):
			graph.edge(f"n{a}", f"n{b}", label=r)
	return graph


def emit_dot(M: typing.Union[State, Structure], name: str = "heap") -> str:
	return heap_graph(M, name).source


def state_dict(state: State, spare: typing.Sequence[int] = ()) -> dict:
	data = state.heap.to_dict()
	data["spare"] = list(spare)
	return data


def result_dict(result: BmcResult) -> dict:
	"""Plain-data form of a result; see emit_json"""
	sol = result.solution
	data = {
		"status": result.status,
		"bound": result.bound,
		"exhausted_at": result.exhausted_at,
		"kind": result.kind,
		"program": result.program,
		"pre_state": state_dict(sol.pre_state, sol.spare) if sol else None,
		"trace": [st.to_dict() for st in sol.trace] if sol else None,
		"post_state": state_dict(sol.post_state, sol.spare) if sol else None,
		"warnings": list(result.warnings),
	}
	if result.leaked is not None:
		data["leaked"] = list(result.leaked)
	return data


def emit_json(result: BmcResult) -> str:
	"""Stable JSON text of a result

	Keys are sorted and indented by two spaces, so equal results give
	byte-identical text. `examined` is left out because it depends on
	how the search was partitioned.
	"""
	return json.dumps(result_dict(result), sort_keys=True, indent=2)


def result_from_json(text: str, types: typing.Iterable[str] = None) -> BmcResult:
	"""Parse emit_json output back into a BmcResult

	Parameters:
	-----------
	text: str
		JSON produced by emit_json.

	types: iterable of str; optional
		Record types of the pre-state. [Default: read from the program text]
	"""
	data = json.loads(text)
	if types is None:
		types = parse_program(data["program"]).decl.types if data.get("program") else ()
	types = frozenset(types)
	solution = None
	if data.get("pre_state") is not None:
		pre = Structure.from_dict(data["pre_state"])
		post = Structure.from_dict(data["post_state"])
		solution = Solution(
			State(pre, types),
			tuple(TraceStep.from_dict(st) for st in data["trace"]),
			State(post, {prime(t) for t in types}),
			tuple(int(d) for d in data["pre_state"].get("spare", ())),
		)
	return BmcResult(
		status=data["status"],
		bound=int(data["bound"]),
		solution=solution,
		exhausted_at=data.get("exhausted_at"),
		warnings=list(data.get("warnings", ())),
		kind=data.get("kind", "check"),
		program=data.get("program", ""),
		leaked=data.get("leaked"),
	)
