# Assets
#
# Absolute paths to test assets


import os as _os

from heapcheck.corpus import CORPUS_DIR

TEST_DIR = _os.path.dirname(_os.path.abspath(__file__))
CASE_DIR = _os.path.join(TEST_DIR, "cases")

LIST_AND_CYCLE_HEAP = _os.path.join(CASE_DIR, "list_and_cycle.json")
ONE_FREE_CELL = _os.path.join(CASE_DIR, "one_free_cell.json")

LIST_SPEC = _os.path.join(CORPUS_DIR, "list.spec")
LIST_HEADED_SPEC = _os.path.join(CORPUS_DIR, "list_headed.spec")
DLIST_SPEC = _os.path.join(CORPUS_DIR, "dlist.spec")
LRLISTS_SEQ_SPEC = _os.path.join(CORPUS_DIR, "lrlists_seq.spec")
LRLISTS_UNION_SPEC = _os.path.join(CORPUS_DIR, "lrlists_union.spec")
TREES_SPEC = _os.path.join(CORPUS_DIR, "trees.spec")
COMPANY_SPEC = _os.path.join(CORPUS_DIR, "company.spec")
CIRCULAR_LIST_SPEC = _os.path.join(CORPUS_DIR, "circular_list.spec")
LIST_REACHABLE_SPEC = _os.path.join(CORPUS_DIR, "list_reachable.spec")
ALIAS_SPEC = _os.path.join(CORPUS_DIR, "alias.spec")
TRUE_SPEC = _os.path.join(CORPUS_DIR, "true.spec")

REPLACE_PROG = _os.path.join(CORPUS_DIR, "replace.prog")
REPLACE_INSTRUMENTED_PROG = _os.path.join(CORPUS_DIR, "replace_instrumented.prog")
LEAK_NEW_PROG = _os.path.join(CORPUS_DIR, "leak_new.prog")
LIST_EMPTY_PROG = _os.path.join(CORPUS_DIR, "list_empty.prog")
ALIAS_PROG = _os.path.join(CORPUS_DIR, "alias.prog")
ALIAS_COPY_PROG = _os.path.join(CORPUS_DIR, "alias_copy.prog")

ALIAS_INST = _os.path.join(CORPUS_DIR, "alias.inst")
COPY_DIFFERS_INST = _os.path.join(CORPUS_DIR, "copy_differs.inst")

SPEC_FILES = (
	LIST_SPEC, LIST_HEADED_SPEC, DLIST_SPEC, LRLISTS_SEQ_SPEC, LRLISTS_UNION_SPEC,
	TREES_SPEC, COMPANY_SPEC, CIRCULAR_LIST_SPEC, LIST_REACHABLE_SPEC, ALIAS_SPEC, TRUE_SPEC,
)
PROGRAM_FILES = (
	REPLACE_PROG, REPLACE_INSTRUMENTED_PROG, LEAK_NEW_PROG, LIST_EMPTY_PROG, ALIAS_PROG, ALIAS_COPY_PROG,
)
INSTANCE_FILES = (ALIAS_INST, COPY_DIFFERS_INST)
