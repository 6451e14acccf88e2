"""
corpus

Shipped example specifications, programs and instances
"""

import os as _os

from heapcheck.errors import HeapcheckError

CORPUS_DIR = _os.path.dirname(_os.path.abspath(__file__))
SUFFIXES = (".spec", ".prog", ".inst")


def names():
	"""File names of every shipped example, sorted"""
	return sorted(f for f in _os.listdir(CORPUS_DIR) if f.endswith(SUFFIXES))


def path(name: str) -> str:
	"""Absolute path of the example `name`"""
	full = _os.path.join(CORPUS_DIR, name)
	if not _os.path.isfile(full):
		raise HeapcheckError(f"No corpus file named {name!r}; see `heapcheck list-corpus`.")
	return full
