"""
errors

Exceptions raised by heapcheck
"""


class HeapcheckError(Exception):
	"""Base class for every error heapcheck raises on purpose"""


class UnknownSymbol(HeapcheckError, KeyError):
	"""A formula mentions a name the structure does not interpret"""
	def __init__(self, name: str, kind: str = "symbol"):
		self.name = name
		self.kind = kind
		super().__init__(f"Unknown {kind}: {name!r}")
	
	def __str__(self):
		return self.args[0]


class HeapcheckSyntaxError(HeapcheckError):
	"""Positioned error in one of the surface languages
	
	Parameters:
	-----------
	message: str
		What went wrong.
	
	line, column: int; optional
		1-based position of the offending token.
	
	path: str; optional
		File the text was read from.
	"""
	def __init__(self, message: str, line: int = None, column: int = None, path: str = None):
		self.message = message
		self.line = line
		self.column = column
		self.path = path
		super().__init__(self._format())
	
	def _format(self) -> str:
		where = self.path or "<input>"
		if self.line is not None:
			where += f":{self.line}"
			if self.column is not None:
				where += f":{self.column}"
		return f"{where}: {self.message}"
	
	def located(self, path: str):
		"""Copy of this error attributed to `path`"""
		return type(self)(self.message, self.line, self.column, path)


class NoSuchField(HeapcheckSyntaxError):
	pass


class UnknownVariable(HeapcheckSyntaxError):
	pass


class TooManyVariables(HeapcheckSyntaxError):
	"""The formula needs three live variables"""


class CountTooLarge(HeapcheckSyntaxError):
	pass


class SpecError(HeapcheckError):
	"""A specification violates a load-time condition"""


class AlreadyPrimed(HeapcheckError):
	def __init__(self, name: str):
		self.name = name
		super().__init__(f"Name {name!r} is already primed.")


class PrivilegeBudgetExceeded(SpecError):
	pass


class ConfigError(HeapcheckError):
	pass
