from heapcheck.bmc.rename import rename_primed, prime, extensional_part
from heapcheck.bmc.instance import (
	MCInstance, Solution, BmcResult, make_instance, bmc_solve, sat_instance,
	with_program_vocabulary, primed_frame
)
from heapcheck.bmc.analyses import (
	mk_dangling_instance, mk_alias_instance, mk_must_alias_query, must_alias, MustAlias,
	mk_intersection_instance, mk_leak_instance, leak_names, LeakNames,
	leaked_nodes, solution_leaks, prefix_safety_instances
)
from heapcheck.bmc.report import prefix_sweep, sweep_frame, prefix_range, SWEEP_COLUMNS
