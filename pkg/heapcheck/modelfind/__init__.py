from heapcheck.modelfind.config import SearchConfig
from heapcheck.modelfind.enumerate import StructureSpace, enumerate_structures
from heapcheck.modelfind.search import (
	SearchOutcome, ModelResult, SatisfiesSpec, run_search, spec_space, find_model
)
