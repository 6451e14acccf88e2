from heapcheck.cli.parser import (
	ParseOptions, SourceUnit, InstanceSource, Resolver,
	parse_formula, parse_spec, parse_program, parse_instance,
	load_spec, load_program, load_instance, build_spec, build_program, build_instance
)
from heapcheck.cli.printer import print_spec, print_program, print_instance
from heapcheck.cli.emit import emit_dot, emit_json, heap_graph, result_dict, result_from_json, state_dict
from heapcheck.cli.main import main
