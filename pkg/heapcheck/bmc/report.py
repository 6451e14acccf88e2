"""
report

Tables of model-checking results
"""

import logging
import typing

import pandas as pd

from heapcheck.bmc.analyses import prefix_safety_instances
from heapcheck.bmc.instance import BmcResult, bmc_solve
from heapcheck.datalog.spec import SpecFormula
from heapcheck.modelfind.config import SearchConfig
from heapcheck.program.template import BoundedProgram


logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["range", "target", "status", "bound", "pre_size", "examined"]


def prefix_range(i: int) -> str:
	"""Surface name of the prefix [0]..[i-1]"""
	if i == 0:
		return "empty"
	return f"[0]-[{i - 1}]"


def result_row(i: int, target: str, result: BmcResult) -> dict:
	size = result.solution.pre_state.heap.size if result.sat else None
	return {
		"check": i,
		"range": prefix_range(i),
		"target": target,
		"status": result.status,
		"bound": result.bound,
		"pre_size": size,
		"examined": result.examined,
	}


def prefix_sweep(
		bp: BoundedProgram,
		pre: SpecFormula,
		cfg: SearchConfig,
		include_entry: bool = False
) -> pd.DataFrame:
	"""Solve every prefix-safety instance of an instrumented program

	Parameters:
	-----------
	bp: BoundedProgram
		Instrumented program.

	pre: SpecFormula

	cfg: SearchConfig

	include_entry: bool; optional
		Also check the allocation test at index 0. [Default: False]

	Returns:
	--------
	pd.DataFrame
		One row per allocation check, indexed by its position, with the
		columns of SWEEP_COLUMNS. pre_size is <NA> for exhausted instances.
	"""
	rows = []
	for i, target, inst in prefix_safety_instances(bp, pre, include_entry):
		result = bmc_solve(inst, cfg)
		logger.info("%s on %s: %s", prefix_range(i), target, result.status)
		rows.append(result_row(i, target, result))
	return sweep_frame(rows)


def sweep_frame(rows: typing.List[dict]) -> pd.DataFrame:
	if not rows:
		df = pd.DataFrame(columns=SWEEP_COLUMNS)
		df.index.name = "check"
		return df
	df = pd.DataFrame(rows).set_index("check")
	df["pre_size"] = pd.array([None if pd.isna(v) else int(v) for v in df["pre_size"]], dtype="Int64")
	return df[SWEEP_COLUMNS]
