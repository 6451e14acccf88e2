"""
config

Bounds and options for the model finder
"""

import dataclasses
import typing


@dataclasses.dataclass(frozen=True)
class SearchConfig:
	"""Search bounds

	Parameters:
	-----------
	max_domain: int
		Largest structure size tried.

	min_domain: int; optional
		Smallest structure size tried.
		[Default: the number of constants that must be told apart, see first_size]

	spare_cells: int; optional
		Unlabeled, unconnected nodes appended to every pre-state so that
		allocation has room to work. [Default: 0]

	parallel_width: int; optional
		Number of worker processes. [Default: 1]

	deterministic: bool; optional
		Whether parallel runs must return the canonically least result.
		When False the first worker to succeed wins. [Default: True]

	null_axiom: bool; optional
		Whether NULL is forbidden to emit edges. [Default: True]

	edge_cap: int; optional
		Largest number of tuples per non-functional binary predicate.
		[Default: the structure size]
	"""
	max_domain: int
	min_domain: typing.Optional[int] = None
	spare_cells: int = 0
	parallel_width: int = 1
	deterministic: bool = True
	null_axiom: bool = True
	edge_cap: typing.Optional[int] = None

	def __post_init__(self):
		assert isinstance(self.max_domain, int) and self.max_domain >= 1, \
			f"max_domain must be a positive integer; got {self.max_domain!r}."
		if self.min_domain is not None:
			assert isinstance(self.min_domain, int) and self.min_domain >= 1, \
				f"min_domain must be a positive integer; got {self.min_domain!r}."
			assert self.min_domain <= self.max_domain, \
				f"min_domain ({self.min_domain}) exceeds max_domain ({self.max_domain})."
		assert self.spare_cells >= 0, f"spare_cells must be non-negative; got {self.spare_cells}."
		assert self.parallel_width >= 1, f"parallel_width must be at least 1; got {self.parallel_width}."
		if self.edge_cap is not None:
			assert self.edge_cap >= 0, f"edge_cap must be non-negative; got {self.edge_cap}."

	def bound_warnings(self, n_constants: int) -> typing.List[str]:
		"""BoundTooSmall when the constants cannot all be told apart"""
		if self.max_domain < n_constants:
			return [
				f"BoundTooSmall: max_domain {self.max_domain} is below the "
				f"{n_constants} declared constants; they cannot all be told apart"
			]
		return []

	def first_size(self, n_constants: int) -> int:
		"""Size the search starts at

		An explicit min_domain wins. Otherwise the search starts with one
		node per constant, capped at max_domain.
		"""
		if self.min_domain is not None:
			return self.min_domain
		return max(1, min(n_constants, self.max_domain))
