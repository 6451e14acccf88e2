"""
grammar

Lark grammar shared by specification, program and instance files

A file is a sequence of items. Specification items declare vocabulary,
define Datalog programs, cardinality constraints and assertions; program
items declare templates, variables and the action list. Instance files
add pre/post sections and file references.

Operator precedence, tightest first: !, &&, ||, ->, <->. Quantifier bodies
extend as far right as possible.
"""

import functools

import lark


GRAMMAR = r"""
unit: item*
formula_only: formula

?item: template
	| vars_decl
	| decl
	| datalog
	| action_program
	| cardinality
	| assertion
	| section

template: "template" NAME "{" field* "}"
field: NAME ":" NAME ";"
vars_decl: "vars" names ";"

decl: "const" names ";"    -> const_decl
	| "unary" names ";"    -> unary_decl
	| "witness" names ";"  -> witness_decl
	| "fun" names ";"      -> fun_decl
	| "rel" names ";"      -> rel_decl

names: NAME ("," NAME)*

datalog: "program" NAME "{" clause* "}"
clause: NAME "(" NAME ")" (":-" literal ("," literal)*)? "."
?literal: "!" atom              -> neg_literal
	| atom
	| term "=" term            -> eq
	| term "!=" term           -> neq
	| "(" formula ")"          -> guard_formula

action_program: "program" "{" action* "}"
action: "assume" "(" formula ")" ";"          -> assume
	| NAME ":=" "new" NAME ";"               -> new
	| NAME ":=" NAME "." NAME ";"            -> read
	| NAME "." NAME ":=" NAME ";"            -> write
	| "dispose" NAME "(" NAME ")" ";"        -> dispose
	| NAME ":=" NAME ";"                     -> assign

cardinality: "cardinality" "{" constraint* "}"
constraint: lin cmp lin ";"
lin: lin_first lin_rest*
?lin_first: "-" lin_atom   -> minus_term
	| lin_atom              -> plus_term
?lin_rest: "+" lin_atom    -> plus_term
	| "-" lin_atom          -> minus_term
lin_atom: INT "*" COUNT    -> scaled
	| COUNT                 -> counted
	| INT                   -> number

assertion: "assert" formula ";"

section: "pre" "{" item* "}"      -> pre_inline
	| "pre" STRING ";"            -> pre_file
	| "post" "{" item* "}"        -> post_inline
	| "post" STRING ";"           -> post_file
	| "program" STRING ";"        -> program_file

?formula: iff
?iff: imp
	| imp "<->" imp             -> iff_
?imp: disj
	| disj "->" imp             -> implies
?disj: conj
	| conj ("||" conj)+         -> or_
?conj: unary
	| unary ("&&" unary)+       -> and_
?unary: "!" unary              -> not_
	| quant
	| atom
	| term "=" term            -> eq
	| term "!=" term           -> neq
	| "true"                   -> true
	| "false"                  -> false
	| "(" formula ")"

quant: "forall" NAME "." formula           -> forall
	| "exists" NAME "." formula             -> exists
	| "exists" cmp INT NAME "." formula     -> count

!cmp: ">=" | "<=" | "="

atom: NAME "(" term ("," term)* ")"
term: NAME

COUNT: /#[A-Za-z_][A-Za-z0-9_]*'?/
NAME: /[A-Za-z_][A-Za-z0-9_]*'?/
STRING: /"[^"\n]*"/
COMMENT: /\/\/[^\n]*/

%import common.INT
%import common.WS
%ignore WS
%ignore COMMENT
"""


@functools.lru_cache(maxsize=None)
def get_parser() -> lark.Lark:
	"""LALR parser over GRAMMAR with the starts `unit` and `formula_only`"""
	return lark.Lark(
		GRAMMAR,
		parser="lalr",
		start=["unit", "formula_only"],
		propagate_positions=True,
	)
