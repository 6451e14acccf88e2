"""
actions

The six actions of bounded pointer programs
"""

import abc
import dataclasses
import typing

from heapcheck.errors import SpecError
from heapcheck.logic.formula import Formula, to_string
from heapcheck.logic.normalize import is_universal


class Action(abc.ABC):
	"""Base class for a single program step"""

	@abc.abstractmethod
	def to_string(self) -> str:
		pass

	def dereferences(self) -> typing.Optional[str]:
		"""Variable whose cell this action needs allocated, if any"""
		return None

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class Assume(Action):
	"""assume(γ): continue if γ holds, fail otherwise"""
	formula: Formula

	def __post_init__(self):
		if not is_universal(self.formula):
			raise SpecError(f"An assume guard may only quantify universally: {to_string(self.formula)}")

	def to_string(self) -> str:
		return f"assume({to_string(self.formula)});"


@dataclasses.dataclass(frozen=True)
class Assign(Action):
	"""y := e, where e is a variable or NULL"""
	target: str
	source: str

	def to_string(self) -> str:
		return f"{self.target} := {self.source};"


@dataclasses.dataclass(frozen=True)
class Read(Action):
	"""y := x.s"""
	target: str
	field: str
	source: str

	def dereferences(self) -> typing.Optional[str]:
		return self.source

	def to_string(self) -> str:
		return f"{self.target} := {self.source}.{self.field};"


@dataclasses.dataclass(frozen=True)
class Write(Action):
	"""x.s := e"""
	field: str
	target: str
	value: str

	def dereferences(self) -> typing.Optional[str]:
		return self.target

	def to_string(self) -> str:
		return f"{self.target}.{self.field} := {self.value};"


@dataclasses.dataclass(frozen=True)
class Dispose(Action):
	"""dispose t(x)"""
	type: str
	var: str

	def dereferences(self) -> typing.Optional[str]:
		return self.var

	def to_string(self) -> str:
		return f"dispose {self.type}({self.var});"


@dataclasses.dataclass(frozen=True)
class New(Action):
	"""y := new t"""
	target: str
	type: str

	def to_string(self) -> str:
		return f"{self.target} := new {self.type};"
