"""
template

Record (template) declarations and bounded programs
"""

import dataclasses
import typing

from heapcheck.errors import SpecError
from heapcheck.logic.signature import Signature, NULL


@dataclasses.dataclass(frozen=True)
class TemplateDecl:
	"""⟨T, f_1, ..., f_k⟩

	Parameters:
	-----------
	types: frozenset of str
		Type names; a node is allocated when it carries one of them.

	fields: dict of {str: dict of {str: str}}
		For every field, the partial map from source type to target type.
	"""
	types: typing.FrozenSet[str]
	fields: typing.Mapping[str, typing.Mapping[str, str]] = dataclasses.field(default_factory=dict)

	def __post_init__(self):
		object.__setattr__(self, "types", frozenset(self.types))
		object.__setattr__(self, "fields", {f: dict(m) for f, m in self.fields.items()})
		assert self.types, "A template declaration needs at least one type."
		for f, mapping in self.fields.items():
			for src, tgt in mapping.items():
				if src not in self.types or tgt not in self.types:
					raise SpecError(f"Field {f} maps {src} to {tgt}, which are not both declared types.")
		clash = self.types & set(self.fields)
		if clash:
			raise SpecError(f"Names used both as type and field: {sorted(clash)}")

	def has_field(self, t: str, f: str) -> bool:
		return t in self.fields.get(f, {})

	def fields_of(self, t: str) -> typing.List[str]:
		return sorted(f for f, m in self.fields.items() if t in m)

	def signature(self, variables: typing.Iterable[str] = ()) -> Signature:
		"""Extensional vocabulary of heaps of this declaration"""
		return Signature(
			ext_unary=self.types,
			ext_binary={f: True for f in self.fields},
			constants=(NULL,) + tuple(variables),
		)

	def merge(self, other: "TemplateDecl") -> "TemplateDecl":
		fields = {f: dict(m) for f, m in self.fields.items()}
		for f, m in other.fields.items():
			fields.setdefault(f, {}).update(m)
		return TemplateDecl(self.types | other.types, fields)

	def to_string(self) -> str:
		lines = []
		for t in sorted(self.types):
			members = " ".join(f"{f}: {self.fields[f][t]};" for f in self.fields_of(t))
			lines.append(f"template {t} {{ {members} }}" if members else f"template {t} {{ }}")
		return "\n".join(lines)

	def __str__(self):
		return self.to_string()


@dataclasses.dataclass(frozen=True)
class BoundedProgram:
	"""A straight-line sequence of actions over declared variables"""
	decl: TemplateDecl
	variables: typing.Tuple[str, ...]
	actions: typing.Tuple["Action", ...] = ()

	def __post_init__(self):
		object.__setattr__(self, "variables", tuple(self.variables))
		object.__setattr__(self, "actions", tuple(self.actions))

	def signature(self) -> Signature:
		return self.decl.signature(self.variables)

	def prefix(self, end: int) -> "BoundedProgram":
		"""Actions [0]..[end-1]"""
		return dataclasses.replace(self, actions=self.actions[:end])

	def to_string(self) -> str:
		lines = [self.decl.to_string()]
		if self.variables:
			lines.append(f"vars {', '.join(self.variables)};")
		lines.append("program {")
		lines.extend(f"\t{a.to_string()}" for a in self.actions)
		lines.append("}")
		return "\n".join(lines)

	def listing(self) -> str:
		"""Actions with their [i] indices"""
		return "\n".join(f"[{i}] {a.to_string()}" for i, a in enumerate(self.actions))

	def __str__(self):
		return self.to_string()
