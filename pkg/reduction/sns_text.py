"""
S-expression text for S(2n+1)S formulas.

    (ex2 X (and (in (s0 Lam) X) (all1 x (-> (in x X) (in (s1 x) X)))))

Lark reads the generic s-expression structure, the conversion below gives
the operators their meaning and reports malformed input with its position.
"""
import re

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedInput

from logic.errors import ParseError
from .sns import (
    Lam, ObjVar, Succ, SEq, SMember, SNot, SAnd, SOr, SXor, SImplies, SIff,
    ExistsObj, ForallObj, ExistsSet, ForallSet, STrue, SFalse, SnSFormula,
    SnSTerm, letter_name,
)

SEXPR_GRAMMAR = r"""
    ?start: sexpr
    ?sexpr: list
          | ATOM
    list: "(" sexpr* ")"

    ATOM: /[^\s()]+/

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(SEXPR_GRAMMAR, parser='lalr', propagate_positions=True)

_OBJECT_VAR = re.compile(r'[a-z_][A-Za-z0-9_]*')
_SET_VAR = re.compile(r'[A-Z][A-Za-z0-9_]*')
_LETTER = re.compile(r'([sb])([0-9]+)')

_BINARY = {'xor': SXor, '->': SImplies, '<->': SIff}
_QUANTIFIERS = {
    'ex1': ExistsObj, 'all1': ForallObj, 'ex2': ExistsSet, 'all2': ForallSet,
}


# ---------- Emitting ----------

def emit_term(term: SnSTerm) -> str:
    match term:
        case Lam():
            return 'Lam'
        case ObjVar(name):
            return name
        case Succ(letter, arg):
            return f"({letter_name(letter)} {emit_term(arg)})"
    raise TypeError(f"not an S(2n+1)S term: {term!r}")


def emit(formula: SnSFormula) -> str:
    """Deterministic one-line rendering, readable by parse_sns."""
    match formula:
        case STrue():
            return 'true'
        case SFalse():
            return 'false'
        case SEq(left, right):
            return f"(= {emit_term(left)} {emit_term(right)})"
        case SMember(term, set_var):
            return f"(in {emit_term(term)} {set_var})"
        case SNot(body):
            return f"(not {emit(body)})"
        case SAnd(parts):
            return ' '.join(['(and'] + [emit(p) for p in parts]) + ')'
        case SOr(parts):
            return ' '.join(['(or'] + [emit(p) for p in parts]) + ')'
        case SXor(l, r):
            return f"(xor {emit(l)} {emit(r)})"
        case SImplies(l, r):
            return f"(-> {emit(l)} {emit(r)})"
        case SIff(l, r):
            return f"(<-> {emit(l)} {emit(r)})"
        case ExistsObj(var, body):
            return f"(ex1 {var} {emit(body)})"
        case ForallObj(var, body):
            return f"(all1 {var} {emit(body)})"
        case ExistsSet(var, body):
            return f"(ex2 {var} {emit(body)})"
        case ForallSet(var, body):
            return f"(all2 {var} {emit(body)})"
    raise TypeError(f"not an S(2n+1)S formula: {formula!r}")


# ---------- Parsing ----------

def _position(node) -> tuple[int, int]:
    if isinstance(node, Token):
        return node.line or 0, node.column or 0
    meta = node.meta
    return getattr(meta, 'line', 0) or 0, getattr(meta, 'column', 0) or 0


def _fail(node, message: str) -> ParseError:
    line, column = _position(node)
    return ParseError(message, line, column)


def _arity(node: Tree, expected: int):
    args = node.children[1:]
    if len(args) != expected:
        raise _fail(
            node, f"'{node.children[0]}' expects {expected} argument(s), "
                  f"got {len(args)}"
        )
    return args


def _head(node: Tree) -> str:
    if not node.children or not isinstance(node.children[0], Token):
        raise _fail(node, "expected an operator after '('")
    return str(node.children[0])


def _term(node) -> SnSTerm:
    if isinstance(node, Token):
        if node == 'Lam':
            return Lam()
        if _OBJECT_VAR.fullmatch(node):
            return ObjVar(str(node))
        raise _fail(node, f"expected a term, got '{node}'")

    head = _head(node)
    found = _LETTER.fullmatch(head)
    if found is None or (found.group(1) == 'b' and found.group(2) == '0'):
        raise _fail(node, f"unknown successor '{head}'")
    index = int(found.group(2))
    letter = -index if found.group(1) == 'b' else index
    (arg,) = _arity(node, 1)
    return Succ(letter, _term(arg))


def _set_var(node) -> str:
    if isinstance(node, Token) and node != 'Lam' and _SET_VAR.fullmatch(node):
        return str(node)
    raise _fail(node, f"expected a set variable, got '{node}'")


def _object_name(node) -> str:
    if isinstance(node, Token) and _OBJECT_VAR.fullmatch(node):
        return str(node)
    raise _fail(node, f"expected an object variable, got '{node}'")


def _formula(node) -> SnSFormula:
    if isinstance(node, Token):
        match str(node):
            case 'true':
                return STrue()
            case 'false':
                return SFalse()
        raise _fail(node, f"expected a formula, got '{node}'")

    head = _head(node)
    match head:
        case '=':
            left, right = _arity(node, 2)
            return SEq(_term(left), _term(right))
        case 'in':
            term, set_var = _arity(node, 2)
            return SMember(_term(term), _set_var(set_var))
        case 'not':
            (body,) = _arity(node, 1)
            return SNot(_formula(body))
        case 'and':
            return SAnd(tuple(_formula(p) for p in node.children[1:]))
        case 'or':
            return SOr(tuple(_formula(p) for p in node.children[1:]))
        case 'xor' | '->' | '<->':
            left, right = _arity(node, 2)
            return _BINARY[head](_formula(left), _formula(right))
        case 'ex1' | 'all1':
            var, body = _arity(node, 2)
            return _QUANTIFIERS[head](_object_name(var), _formula(body))
        case 'ex2' | 'all2':
            var, body = _arity(node, 2)
            return _QUANTIFIERS[head](_set_var(var), _formula(body))
    raise _fail(node, f"unknown operator '{head}'")


def parse_sns(text: str) -> SnSFormula:
    """Reads a formula written by `emit`.

    Raises:
    - ParseError: With line and column of the offending expression
    """
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise ParseError(
            "malformed s-expression",
            max(getattr(e, 'line', 0) or 0, 0),
            max(getattr(e, 'column', 0) or 0, 0),
        ) from e
    return _formula(tree)
