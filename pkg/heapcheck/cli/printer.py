"""
printer

Surface syntax for specifications, programs and instances

Output of these functions parses back to equal objects.
"""

from heapcheck.bmc.instance import MCInstance, primed_frame
from heapcheck.datalog.spec import SpecFormula
from heapcheck.logic.formula import TRUE, to_string
from heapcheck.logic.signature import NULL, Signature
from heapcheck.program.template import BoundedProgram


def _decl(keyword: str, names) -> str:
	return f"{keyword} {', '.join(names)};"


def print_spec(spec: SpecFormula, frame: Signature = None) -> str:
	"""Declarations, programs, cardinality block and assertion of `spec`

	Names already in `frame` are not declared again.
	"""
	sig = spec.signature
	known = frame.names if frame is not None else frozenset()
	lines = []
	consts = [c for c in sig.constants if c != NULL and c not in known]
	if consts:
		lines.append(_decl("const", consts))
	unary = sorted(sig.ext_unary - spec.witnesses - known)
	if unary:
		lines.append(_decl("unary", unary))
	witnesses = sorted(spec.witnesses - known)
	if witnesses:
		lines.append(_decl("witness", witnesses))
	fun = sorted(sig.functional - known)
	if fun:
		lines.append(_decl("fun", fun))
	rel = sorted(sig.relations - known)
	if rel:
		lines.append(_decl("rel", rel))
	for P in spec.programs:
		lines.append(P.to_string())
	if spec.delta:
		lines.append(spec.delta.to_string())
	if spec.matrix != TRUE:
		lines.append(f"assert {to_string(spec.matrix)};")
	return "\n".join(lines) + "\n"


def print_program(bp: BoundedProgram) -> str:
	return bp.to_string() + "\n"


def _indent(text: str) -> str:
	return "\n".join("\t" + line if line else line for line in text.rstrip("\n").split("\n"))


def print_instance(inst: MCInstance) -> str:
	"""Self-contained instance file with inline pre and post sections"""
	return "\n".join([
		"pre {", _indent(print_spec(inst.pre)), "}",
		print_program(inst.bp).rstrip("\n"),
		"post {", _indent(print_spec(inst.post, frame=primed_frame(inst.pre))), "}",
	]) + "\n"
