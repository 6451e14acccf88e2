"""
parser

Readers for specification, program and instance files

Parsing happens in two passes. The lark Transformer turns the parse tree
into surface items that still carry their tokens; the builders then check
names against the vocabulary, map surface variables onto x and y and
produce SpecFormula, BoundedProgram and instance objects.
"""

import dataclasses
import logging
import os
import re
import typing

import lark

from heapcheck.bmc.instance import MCInstance, make_instance, with_program_vocabulary, primed_frame
from heapcheck.bmc.rename import prime
from heapcheck.cli.grammar import get_parser
from heapcheck.datalog.cardinality import LinearConstraint, CardinalitySystem
from heapcheck.datalog.clauses import Clause, DatalogProgram
from heapcheck.datalog.spec import SpecFormula
from heapcheck.errors import (
	HeapcheckSyntaxError, NoSuchField, UnknownVariable, TooManyVariables, CountTooLarge
)
from heapcheck.logic.formula import (
	Formula, Term, Var, Const, X, Y, other, TRUE, FALSE, UnaryAtom, BinaryAtom, Eq, Not,
	And, Or, Implies, Iff, Forall, Exists, Count, conj, to_string
)
from heapcheck.logic.normalize import is_universal
from heapcheck.logic.signature import Signature, NULL, is_primed
from heapcheck.program.actions import Action, Assume, Assign, Read, Write, Dispose, New
from heapcheck.program.state import alloc_formula
from heapcheck.program.template import TemplateDecl, BoundedProgram


logger = logging.getLogger(__name__)

ALLOC = "alloc"


@dataclasses.dataclass(frozen=True)
class ParseOptions:
	"""Knobs of the surface languages

	Parameters:
	-----------
	max_count: int; optional
		Largest k accepted in a counting quantifier. [Default: 64]

	null_axiom: bool; optional
		Whether structures built from parsed input must satisfy the NULL
		axiom. Carried here so that every command reads it from one place.
		[Default: True]
	"""
	max_count: int = 64
	null_axiom: bool = True


DEFAULT_OPTIONS = ParseOptions()


# Surface syntax

@dataclasses.dataclass(frozen=True)
class Surface:
	"""Formula node before name resolution

	`op` is one of atom, eq, not, and, or, implies, iff, forall, exists,
	count, true, false and paren. `token` locates the node for diagnostics.
	"""
	op: str
	args: tuple
	token: typing.Optional[lark.Token] = None


@dataclasses.dataclass(frozen=True)
class Item:
	"""Top-level statement of a file"""
	kind: str
	payload: typing.Any
	token: typing.Optional[lark.Token] = None


@lark.v_args(inline=True)
class SurfaceTransformer(lark.Transformer):
	"""Parse tree to Surface formulas and Items"""

	def unit(self, *items):
		return list(items)

	def formula_only(self, f):
		return f

	# Formulas
	def term(self, tok):
		return tok

	def atom(self, name, *terms):
		return Surface("atom", (name, terms), name)

	def eq(self, left, right):
		return Surface("eq", (left, right), left)

	def neq(self, left, right):
		return Surface("not", (Surface("eq", (left, right), left),), left)

	def not_(self, body):
		return Surface("not", (body,))

	def neg_literal(self, atom):
		return Surface("not", (atom,), atom.token)

	def guard_formula(self, f):
		return Surface("paren", (f,))

	def and_(self, *args):
		return Surface("and", args)

	def or_(self, *args):
		return Surface("or", args)

	def implies(self, left, right):
		return Surface("implies", (left, right))

	def iff_(self, left, right):
		return Surface("iff", (left, right))

	def true(self):
		return Surface("true", ())

	def false(self):
		return Surface("false", ())

	def forall(self, name, body):
		return Surface("forall", (name, body), name)

	def exists(self, name, body):
		return Surface("exists", (name, body), name)

	def cmp(self, tok):
		return str(tok)

	def count(self, cmp, k, name, body):
		return Surface("count", (cmp, k, name, body), name)

	# Declarations
	def names(self, *toks):
		return list(toks)

	def const_decl(self, names):
		return Item("const", names, names[0])

	def unary_decl(self, names):
		return Item("unary", names, names[0])

	def witness_decl(self, names):
		return Item("witness", names, names[0])

	def fun_decl(self, names):
		return Item("fun", names, names[0])

	def rel_decl(self, names):
		return Item("rel", names, names[0])

	def vars_decl(self, names):
		return Item("vars", names, names[0])

	def field(self, name, target):
		return (name, target)

	def template(self, name, *fields):
		return Item("template", list(fields), name)

	# Datalog
	def clause(self, head, var, *literals):
		return (head, var, list(literals))

	def datalog(self, name, *clauses):
		return Item("datalog", list(clauses), name)

	# Cardinality
	def scaled(self, k, count):
		return (int(k), str(count)[1:])

	def counted(self, count):
		return (1, str(count)[1:])

	def number(self, k):
		return (int(k), None)

	def plus_term(self, term):
		return term

	def minus_term(self, term):
		return (-term[0], term[1])

	def lin(self, *terms):
		return list(terms)

	def constraint(self, left, cmp, right):
		terms = {}
		bound = 0
		for c, p in left:
			if p is None:
				bound -= c
			else:
				terms[p] = terms.get(p, 0) + c
		for c, p in right:
			if p is None:
				bound += c
			else:
				terms[p] = terms.get(p, 0) - c
		return LinearConstraint(tuple((c, p) for p, c in terms.items()), cmp, bound)

	def cardinality(self, *constraints):
		return Item("cardinality", list(constraints))

	def assertion(self, f):
		return Item("assert", f)

	# Programs
	@lark.v_args(meta=True, inline=True)
	def assume(self, meta, f):
		return ("assume", (f,), meta.line)

	@lark.v_args(meta=True, inline=True)
	def new(self, meta, target, type_):
		return ("new", (target, type_), meta.line)

	@lark.v_args(meta=True, inline=True)
	def read(self, meta, target, source, field):
		return ("read", (target, source, field), meta.line)

	@lark.v_args(meta=True, inline=True)
	def write(self, meta, target, field, value):
		return ("write", (target, field, value), meta.line)

	@lark.v_args(meta=True, inline=True)
	def dispose(self, meta, type_, var):
		return ("dispose", (type_, var), meta.line)

	@lark.v_args(meta=True, inline=True)
	def assign(self, meta, target, source):
		return ("assign", (target, source), meta.line)

	def action_program(self, *actions):
		return Item("actions", list(actions))

	# Instance sections
	def pre_inline(self, *items):
		return Item("pre", list(items))

	def pre_file(self, path):
		return Item("pre", str(path)[1:-1], path)

	def post_inline(self, *items):
		return Item("post", list(items))

	def post_file(self, path):
		return Item("post", str(path)[1:-1], path)

	def program_file(self, path):
		return Item("program_file", str(path)[1:-1], path)


def _describe(e: lark.exceptions.UnexpectedInput) -> str:
	if isinstance(e, lark.exceptions.UnexpectedToken):
		if e.token.type == "$END":
			return f"Unexpected end of input; expected one of {sorted(e.expected)}"
		return f"Unexpected {e.token!s}; expected one of {sorted(e.expected)}"
	if isinstance(e, lark.exceptions.UnexpectedCharacters):
		return f"Unexpected character {e.char!r}"
	return "Unexpected end of input"


def _position(e: lark.exceptions.UnexpectedInput):
	line = getattr(e, "line", None)
	column = getattr(e, "column", None)
	if line is None or line < 1:
		return None, None
	return line, column


def parse_items(text: str, path: str = None, start: str = "unit"):
	"""Transformed parse of `text`; syntax errors become HeapcheckSyntaxError"""
	try:
		tree = get_parser().parse(text, start=start)
	except lark.exceptions.UnexpectedInput as e:
		line, column = _position(e)
		raise HeapcheckSyntaxError(_describe(e), line, column, path) from e
	return SurfaceTransformer().transform(tree)


# Name resolution

def _slot(name: str) -> Var:
	"""Variable a surface name prefers: u- and x-like names take x"""
	if re.fullmatch(r"[vy]\d*", name):
		return Y
	return X


def _free_names(node: Surface) -> typing.Set[str]:
	if node.op == "atom":
		return {str(t) for t in node.args[1]}
	if node.op == "eq":
		return {str(t) for t in node.args}
	if node.op in ("forall", "exists"):
		return _free_names(node.args[1]) - {str(node.args[0])}
	if node.op == "count":
		return _free_names(node.args[3]) - {str(node.args[2])}
	out = set()
	for a in node.args:
		if isinstance(a, Surface):
			out |= _free_names(a)
	return out


class Resolver:
	"""Surface formulas to Formulas over a fixed signature

	Parameters:
	-----------
	sig: Signature
		Vocabulary the formulas may use.

	types: iterable of str; optional
		Record types; when given, `alloc(t)` expands to the disjunction of
		the type atoms. [Default: none]

	options: ParseOptions; optional

	path: str; optional
		File name for diagnostics.
	"""
	def __init__(
			self,
			sig: Signature,
			types: typing.Iterable[str] = (),
			options: ParseOptions = DEFAULT_OPTIONS,
			path: str = None
	):
		self.sig = sig
		self.types = tuple(sorted(types))
		self.options = options
		self.path = path

	def error(self, cls, message: str, token: lark.Token = None):
		line = getattr(token, "line", None)
		column = getattr(token, "column", None)
		return cls(message, line, column, self.path)

	def term(self, tok: lark.Token, scope: typing.Mapping[str, Var]) -> Term:
		name = str(tok)
		if name in scope:
			return scope[name]
		if name in self.sig.constants:
			return Const(name)
		raise self.error(UnknownVariable, f"Unknown variable or constant {name!r}", tok)

	def formula(self, node: Surface, scope: typing.Mapping[str, Var] = None) -> Formula:
		scope = scope or {}
		op = node.op
		if op == "true":
			return TRUE
		if op == "false":
			return FALSE
		if op == "atom":
			return self.atom(node, scope)
		if op == "eq":
			left, right = node.args
			return Eq(self.term(left, scope), self.term(right, scope))
		if op == "not":
			return Not(self.formula(node.args[0], scope))
		if op == "paren":
			return self.formula(node.args[0], scope)
		if op == "and":
			return And(tuple(self.formula(a, scope) for a in node.args))
		if op == "or":
			return Or(tuple(self.formula(a, scope) for a in node.args))
		if op == "implies":
			return Implies(self.formula(node.args[0], scope), self.formula(node.args[1], scope))
		if op == "iff":
			return Iff(self.formula(node.args[0], scope), self.formula(node.args[1], scope))
		if op in ("forall", "exists"):
			name, body = node.args
			var = self.bind(name, body, scope)
			inner = self.formula(body, {**scope, str(name): var})
			return Forall(var, inner) if op == "forall" else Exists(var, inner)
		if op == "count":
			cmp, k, name, body = node.args
			k = int(k)
			if k > self.options.max_count:
				raise self.error(
					CountTooLarge, f"Counting bound {k} exceeds the maximum of {self.options.max_count}", name
				)
			var = self.bind(name, body, scope)
			return Count(cmp, k, var, self.formula(body, {**scope, str(name): var}))
		raise ValueError(f"Unknown surface node {op!r}")

	def bind(self, name: lark.Token, body: Surface, scope: typing.Mapping[str, Var]) -> Var:
		"""x or y for a newly quantified name, avoiding variables still referenced in `body`"""
		live = {scope[n] for n in _free_names(body) - {str(name)} if n in scope}
		preferred = _slot(str(name))
		for var in (preferred, other(preferred)):
			if var not in live:
				return var
		raise self.error(
			TooManyVariables, f"Quantifying {name} would need a third variable", name
		)

	def atom(self, node: Surface, scope) -> Formula:
		name, terms = node.args
		pred = str(name)
		arity = self.sig.arity(pred)
		if arity is None and pred == ALLOC and self.types and len(terms) == 1:
			return alloc_formula(self.types, self.term(terms[0], scope))
		if arity is None:
			raise self.error(HeapcheckSyntaxError, f"Unknown predicate {pred!r}", name)
		if arity != len(terms):
			raise self.error(
				HeapcheckSyntaxError, f"{pred} takes {arity} argument(s); got {len(terms)}", name
			)
		args = [self.term(t, scope) for t in terms]
		if arity == 1:
			return UnaryAtom(pred, args[0])
		return BinaryAtom(pred, args[0], args[1])

	def clause(self, head: lark.Token, var: lark.Token, literals: typing.List[Surface]) -> Clause:
		"""One Datalog clause; binary atoms introduce the body variables"""
		u = str(var)
		scope = {u: X}
		body = {}
		for lit in literals:
			if lit.op != "atom" or len(lit.args[1]) != 2:
				continue
			rel, (a, b) = lit.args
			if str(a) != u:
				raise self.error(HeapcheckSyntaxError, f"{rel} must start at the head variable {u}", a)
			if str(b) == u:
				raise self.error(HeapcheckSyntaxError, f"{rel} must end at a fresh variable", b)
			if str(b) in body:
				raise self.error(HeapcheckSyntaxError, f"Variable {b} is used by two binary atoms", b)
			if str(rel) not in self.sig.ext_binary:
				raise self.error(HeapcheckSyntaxError, f"Unknown binary predicate {str(rel)!r}", rel)
			body[str(b)] = [str(rel), None, b]
		guard = []
		for lit in literals:
			if lit.op == "atom" and len(lit.args[1]) == 1 and str(lit.args[1][0]) in body:
				pred, (t,) = lit.args
				slot = body[str(t)]
				if slot[1] is not None:
					raise self.error(HeapcheckSyntaxError, f"Variable {t} carries two intensional atoms", t)
				if not self.sig.is_intensional(str(pred)):
					raise self.error(HeapcheckSyntaxError, f"{pred} is not defined by a program", pred)
				slot[1] = str(pred)
			elif lit.op == "atom" and len(lit.args[1]) == 2:
				continue
			else:
				guard.append(self.formula(lit, scope))
		for b, (rel, q, tok) in body.items():
			if q is None:
				raise self.error(HeapcheckSyntaxError, f"Variable {b} needs an intensional atom", tok)
		return Clause(str(head), conj(*guard), tuple((rel, q) for rel, q, _ in body.values()))


# Files

@dataclasses.dataclass
class SourceUnit:
	"""Items of one file, with nested sections for instance files"""
	path: typing.Optional[str]
	items: typing.List[Item]

	def of_kind(self, *kinds: str) -> typing.List[Item]:
		return [it for it in self.items if it.kind in kinds]

	def section(self, kind: str) -> typing.Optional[Item]:
		found = self.of_kind(kind)
		if len(found) > 1:
			raise HeapcheckSyntaxError(f"More than one {kind} section", path=self.path)
		return found[0] if found else None

	def directory(self) -> str:
		return os.path.dirname(os.path.abspath(self.path)) if self.path else os.getcwd()

	def relative(self, path: str) -> str:
		return path if os.path.isabs(path) else os.path.join(self.directory(), path)


def read_unit(path: str) -> SourceUnit:
	with open(path, "r") as f:
		text = f.read()
	return SourceUnit(path, parse_items(text, path))


SPEC_KINDS = ("const", "unary", "witness", "fun", "rel", "datalog", "cardinality", "assert", "template", "vars")
PROGRAM_KINDS = ("template", "vars", "actions")


def _reject(unit: SourceUnit, allowed: typing.Iterable[str], what: str):
	for it in unit.items:
		if it.kind not in allowed:
			raise HeapcheckSyntaxError(
				f"'{it.kind}' is not allowed in {what}",
				getattr(it.token, "line", None), getattr(it.token, "column", None), unit.path,
			)


def _templates(unit: SourceUnit) -> TemplateDecl:
	items = unit.of_kind("template")
	types = [str(it.token) for it in items]
	seen = set()
	fields: typing.Dict[str, typing.Dict[str, str]] = {}
	for it in items:
		t = str(it.token)
		if t in seen:
			raise HeapcheckSyntaxError(f"Type {t} declared twice", it.token.line, it.token.column, unit.path)
		seen.add(t)
		for name, target in it.payload:
			if str(target) not in types:
				raise HeapcheckSyntaxError(
					f"Field {name} points to undeclared type {target}", target.line, target.column, unit.path
				)
			fields.setdefault(str(name), {})[t] = str(target)
	if not types:
		return None
	return TemplateDecl(frozenset(types), fields)


def _names(unit: SourceUnit, *kinds: str) -> typing.List[lark.Token]:
	out = []
	for it in unit.of_kind(*kinds):
		out.extend(it.payload)
	return out


def build_spec(
		unit: SourceUnit,
		options: ParseOptions = DEFAULT_OPTIONS,
		frame: Signature = None,
		types: typing.Iterable[str] = ()
) -> SpecFormula:
	"""SpecFormula declared by the items of `unit`

	Parameters:
	-----------
	unit: SourceUnit
		Specification items; templates and vars contribute types, fields
		and constants.

	options: ParseOptions; optional

	frame: Signature; optional
		Vocabulary the items extend. Post-conditions pass the primed frame
		of the pre-condition and may then only declare primed names;
		otherwise primed names are rejected. [Default: none]

	types: iterable of str; optional
		Extra record types for `alloc`. [Default: none]

	Returns:
	--------
	SpecFormula
		Validated.
	"""
	_reject(unit, SPEC_KINDS, "a specification")
	declared = _names(unit, "const", "vars", "unary", "witness", "fun", "rel")
	for it in unit.of_kind("template"):
		declared += [it.token] + [name for name, _ in it.payload]
	for it in unit.of_kind("datalog"):
		declared += [head for head, _, _ in it.payload]
	for tok in declared:
		primed = is_primed(str(tok))
		if primed != (frame is not None):
			reason = "primed names are reserved for post-conditions" if primed \
				else "post-conditions may only declare primed names"
			raise HeapcheckSyntaxError(f"{tok}: {reason}", tok.line, tok.column, unit.path)

	decl = _templates(unit)
	tdecl_types = set(decl.types) if decl else set()
	ext_binary = {f: True for f in (decl.fields if decl else {})}
	ext_binary.update({str(n): True for n in _names(unit, "fun")})
	for n in _names(unit, "rel"):
		if ext_binary.get(str(n)):
			raise HeapcheckSyntaxError(f"{n} is declared both fun and rel", n.line, n.column, unit.path)
		ext_binary[str(n)] = False
	witnesses = {str(n) for n in _names(unit, "witness")}
	ext_unary = tdecl_types | {str(n) for n in _names(unit, "unary")} | witnesses
	constants = []
	for n in _names(unit, "const", "vars"):
		if str(n) != NULL and str(n) not in constants:
			constants.append(str(n))

	datalog = unit.of_kind("datalog")
	owner = {}
	for i, it in enumerate(datalog):
		for head, _, _ in it.payload:
			owner[str(head)] = i
	sig = Signature(ext_unary, ext_binary, tuple(constants), frozenset(owner), owner)
	if frame is not None:
		sig = frame.merge(sig)

	resolver = Resolver(sig, set(types) | tdecl_types, options, unit.path)
	programs = [
		DatalogProgram(str(it.token), tuple(resolver.clause(h, v, lits) for h, v, lits in it.payload))
		for it in datalog
	]
	delta = CardinalitySystem(tuple(c for it in unit.of_kind("cardinality") for c in it.payload))
	matrix = conj(*(resolver.formula(it.payload) for it in unit.of_kind("assert")))
	spec = SpecFormula(tuple(programs), delta, matrix, sig, frozenset(witnesses))
	return spec.validate()


def build_program(unit: SourceUnit, options: ParseOptions = DEFAULT_OPTIONS) -> BoundedProgram:
	"""BoundedProgram declared by the template, vars and program items of `unit`"""
	_reject(unit, PROGRAM_KINDS, "a program")
	decl = _templates(unit)
	if decl is None:
		raise HeapcheckSyntaxError("A program needs at least one template", path=unit.path)
	variables = []
	for n in _names(unit, "vars"):
		if str(n) == NULL or str(n) in variables:
			raise HeapcheckSyntaxError(f"Variable {n} declared twice or reserved", n.line, n.column, unit.path)
		if str(n) in decl.types or str(n) in decl.fields:
			raise HeapcheckSyntaxError(f"Variable {n} clashes with a type or field", n.line, n.column, unit.path)
		variables.append(str(n))
	bodies = unit.of_kind("actions")
	if len(bodies) != 1:
		raise HeapcheckSyntaxError(f"Expected one program body; found {len(bodies)}", path=unit.path)
	resolver = Resolver(decl.signature(variables), decl.types, options, unit.path)
	actions = tuple(_action(a, decl, variables, resolver) for a in bodies[0].payload)
	return BoundedProgram(decl, tuple(variables), actions)


def _action(raw, decl: TemplateDecl, variables: typing.List[str], resolver: Resolver) -> Action:
	kind, args, line = raw

	def var(tok, allow_null=False):
		name = str(tok)
		if name in variables or (allow_null and name == NULL):
			return name
		raise resolver.error(UnknownVariable, f"Unknown program variable {name!r}", tok)

	def field(tok):
		if str(tok) not in decl.fields:
			raise resolver.error(NoSuchField, f"No field named {str(tok)!r}", tok)
		return str(tok)

	def type_(tok):
		if str(tok) not in decl.types:
			raise resolver.error(HeapcheckSyntaxError, f"Unknown type {str(tok)!r}", tok)
		return str(tok)

	if kind == "assume":
		guard = resolver.formula(args[0])
		if not is_universal(guard):
			raise HeapcheckSyntaxError(
				f"assume may only quantify universally: {to_string(guard)}", line, path=resolver.path
			)
		return Assume(guard)
	if kind == "assign":
		return Assign(var(args[0]), var(args[1], allow_null=True))
	if kind == "read":
		target, source, f = args
		return Read(var(target), field(f), var(source))
	if kind == "write":
		target, f, value = args
		return Write(field(f), var(target), var(value, allow_null=True))
	if kind == "dispose":
		return Dispose(type_(args[0]), var(args[1]))
	if kind == "new":
		return New(var(args[0]), type_(args[1]))
	raise ValueError(f"Unknown action {kind!r} on line {line}")


def action_lines(unit: SourceUnit) -> typing.List[int]:
	"""Source line of every action of the program body"""
	bodies = unit.of_kind("actions")
	return [line for _, _, line in bodies[0].payload] if bodies else []


# Entry points

def _located(fn, path, *args, **kwargs):
	try:
		return fn(*args, **kwargs)
	except HeapcheckSyntaxError as e:
		if e.path is None and path is not None:
			raise e.located(path) from e
		raise


def parse_formula(
		text: str,
		sig: Signature,
		types: typing.Iterable[str] = (),
		options: ParseOptions = DEFAULT_OPTIONS
) -> Formula:
	"""A single formula over `sig`"""
	surface = parse_items(text, start="formula_only")
	return Resolver(sig, types, options).formula(surface)


def parse_spec(text: str, options: ParseOptions = DEFAULT_OPTIONS, path: str = None) -> SpecFormula:
	return build_spec(SourceUnit(path, parse_items(text, path)), options)


def parse_program(text: str, options: ParseOptions = DEFAULT_OPTIONS, path: str = None) -> BoundedProgram:
	return build_program(SourceUnit(path, parse_items(text, path)), options)


def load_spec(path: str, options: ParseOptions = DEFAULT_OPTIONS) -> SpecFormula:
	return build_spec(read_unit(path), options)


def load_program(path: str, options: ParseOptions = DEFAULT_OPTIONS) -> BoundedProgram:
	return build_program(read_unit(path), options)


@dataclasses.dataclass
class InstanceSource:
	"""Pre-condition, program and optional post-condition of an instance file"""
	pre: SpecFormula
	program: BoundedProgram
	post: typing.Optional[SpecFormula] = None
	path: typing.Optional[str] = None
	lines: typing.List[int] = dataclasses.field(default_factory=list)

	def instance(self, kind: str = "check") -> MCInstance:
		if self.post is None:
			raise HeapcheckSyntaxError("The instance has no post section", path=self.path)
		return make_instance(self.pre, self.program, self.post, kind)


def _section_unit(unit: SourceUnit, item: Item) -> SourceUnit:
	if isinstance(item.payload, str):
		return read_unit(unit.relative(item.payload))
	return SourceUnit(unit.path, item.payload)


def build_instance(unit: SourceUnit, options: ParseOptions = DEFAULT_OPTIONS) -> InstanceSource:
	"""Resolve the sections of an instance file

	The pre section (inline or a file reference) is required. The program
	comes from a `program "file";` reference or from the template, vars and
	program items at top level. The post section is read against the
	primed vocabulary of pre and program.
	"""
	_reject(unit, PROGRAM_KINDS + ("pre", "post", "program_file"), "an instance file")
	pre_item = unit.section("pre")
	if pre_item is None:
		raise HeapcheckSyntaxError("An instance needs a pre section", path=unit.path)
	pre = build_spec(_section_unit(unit, pre_item), options)

	ref = unit.section("program_file")
	if ref is not None:
		prog_unit = read_unit(unit.relative(ref.payload))
	else:
		prog_unit = SourceUnit(unit.path, unit.of_kind(*PROGRAM_KINDS))
	bp = build_program(prog_unit, options)

	post = None
	post_item = unit.section("post")
	if post_item is not None:
		frame = primed_frame(with_program_vocabulary(pre, bp))
		types = [prime(t) for t in bp.decl.types]
		post = build_spec(_section_unit(unit, post_item), options, frame=frame, types=types)
	logger.debug("instance %s: %d actions, post %s", unit.path, len(bp.actions), post is not None)
	return InstanceSource(pre, bp, post, unit.path, action_lines(prog_unit))


def parse_instance(text: str, options: ParseOptions = DEFAULT_OPTIONS, path: str = None) -> InstanceSource:
	return _located(build_instance, path, SourceUnit(path, parse_items(text, path)), options)


def load_instance(path: str, options: ParseOptions = DEFAULT_OPTIONS) -> InstanceSource:
	return _located(build_instance, path, read_unit(path), options)
