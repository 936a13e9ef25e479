"""
Parsers for program files, queries, language files and formulas, built on
lark (LALR). Grammars accept any arity so that `p(X, Y)` is reported as an
arity violation instead of a syntax error.

Program grammar:
    #constant a.  #function f.  #predicate p.    % fix L and its order
    p(a).
    p(f(X)) :- not p(X).
Query grammar:
    ?- p(f(a)), not q(X).
Formula grammar (precedence ~ > & > | > ->/<->, quantifiers reach right):
    forall X. (p(X) -> ~q(X))
"""
from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import ErrorCode, ParseError, ValidationError
from .syntax import (
    Signature, Var, Const, Apply, Atom, Eq, Not, And, Or, Implies, Iff,
    Exists, Forall, Truth, Falsity, Literal, Clause, Program, Query,
    infer_signature, validate, exists_all, forall_all,
)

_TERMS = r"""
    term: VAR -> var
        | NAME -> name
        | NAME "(" args ")" -> app
        | NAME "(" ")" -> app
    args: term ("," term)*

    VAR: /[A-Z_][A-Za-z0-9_]*/
    NAME: /[a-z][A-Za-z0-9_]*/
    COMMENT: /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: quantified
            | equivalence

    quantified: "exists" vars "." formula -> exists
              | "forall" vars "." formula -> forall
    vars: VAR ("," VAR)*

    ?equivalence: disjunction
                | disjunction "->" equivalence_tail -> implies
                | disjunction "<->" equivalence_tail -> iff
    ?equivalence_tail: equivalence | quantified

    ?disjunction: conjunction
                | conjunction "|" disjunction_tail -> disj
    ?disjunction_tail: disjunction | quantified

    ?conjunction: unary
                | unary "&" conjunction_tail -> conj
    ?conjunction_tail: conjunction | quantified

    ?unary: "~" unary_tail -> neg
          | primary
    ?unary_tail: unary | quantified

    ?primary: "(" formula ")"
            | "true" -> truth
            | "false" -> falsity
            | term "=" term -> eq
            | term "!=" term -> neq
            | term -> atom
""" + _TERMS

PROGRAM_GRAMMAR = r"""
    start: statement*

    ?statement: clause
              | query
              | directive

    clause: term "." -> fact
          | term ":-" body "." -> rule
    query: "?-" body "."
    body: literal ("," literal)*
    literal: term -> positive
           | "not" term -> negative
    directive: DIRECTIVE NAME ("," NAME)* "."

    DIRECTIVE: "#constant" | "#function" | "#predicate"
""" + _TERMS

_FORMULA_PARSER = Lark(FORMULA_GRAMMAR, parser='lalr')
_PROGRAM_PARSER = Lark(PROGRAM_GRAMMAR, parser='lalr')


def _arity_error(token: Token, role: str, count: int) -> ValidationError:
    return ValidationError(
        ErrorCode.ARITY_VIOLATION,
        f"{role} '{token}' used with {count} argument(s) at line "
        f"{token.line}, column {token.column}; only unary symbols are allowed"
    )


class _TermBuilder(Transformer):
    """Builds terms; atoms are recognised one level up, where the context
    tells whether a name applied to an argument is a predicate.
    """
    def var(self, children):
        return Var(str(children[0]))

    def name(self, children):
        return Const(str(children[0]))

    def args(self, children):
        return list(children)

    def app(self, children):
        token = children[0]
        arguments = children[1] if len(children) > 1 else []
        if len(arguments) != 1:
            raise _arity_error(token, 'function', len(arguments))
        return _Application(token, arguments[0])


class _Application:
    """A `name(arg)` whose role (function or predicate) is not known yet."""
    def __init__(self, token: Token, arg):
        self.token = token
        self.arg = arg


def _close_term(term):
    """Turns pending applications inside a term into function applications."""
    match term:
        case _Application():
            return Apply(str(term.token), _close_term(term.arg))
        case _:
            return term


def _to_atom(term) -> Atom:
    match term:
        case _Application():
            return Atom(str(term.token), _close_term(term.arg))
        case Const(name):
            raise ValidationError(
                ErrorCode.ARITY_VIOLATION,
                f"predicate '{name}' used with 0 arguments"
            )
    raise ParseError(f"a variable cannot stand for an atom: {term}")


class _FormulaBuilder(_TermBuilder):
    def vars(self, children):
        return [str(token) for token in children]

    def exists(self, children):
        return exists_all(children[0], children[1])

    def forall(self, children):
        return forall_all(children[0], children[1])

    def implies(self, children):
        return Implies(*children)

    def iff(self, children):
        return Iff(*children)

    def disj(self, children):
        return Or(*children)

    def conj(self, children):
        return And(*children)

    def neg(self, children):
        return Not(children[0])

    def truth(self, _):
        return Truth()

    def falsity(self, _):
        return Falsity()

    def eq(self, children):
        return Eq(_close_term(children[0]), _close_term(children[1]))

    def neq(self, children):
        return Not(self.eq(children))

    def atom(self, children):
        return _to_atom(children[0])


class _ProgramBuilder(_TermBuilder):
    def positive(self, children):
        return Literal(_to_atom(children[0]), positive=True)

    def negative(self, children):
        return Literal(_to_atom(children[0]), positive=False)

    def body(self, children):
        return tuple(children)

    def fact(self, children):
        return Clause(_to_atom(children[0]), ())

    def rule(self, children):
        return Clause(_to_atom(children[0]), children[1])

    def query(self, children):
        return Query(children[0])

    def directive(self, children):
        kind = str(children[0]).lstrip('#')
        return kind, [str(token) for token in children[1:]]

    def start(self, children):
        return list(children)


def _run(parser: Lark, builder: Transformer, text: str):
    """Parse and transform, translating lark's exceptions into ours."""
    try:
        tree = parser.parse(text)
    except UnexpectedInput as e:
        line = max(getattr(e, 'line', 0) or 0, 0)
        column = max(getattr(e, 'column', 0) or 0, 0)
        message = str(e).strip().splitlines()[0] if str(e).strip() \
            else 'unexpected input'
        raise ParseError(f"syntax error: {message}", line, column) from e

    try:
        return builder.transform(tree)
    except VisitError as e:
        raise e.orig_exc from e


def _parse_statements(text: str):
    """Splits a program text into directives, clauses and queries."""
    statements = _run(_PROGRAM_PARSER, _ProgramBuilder(), text)

    declared = {'constant': [], 'function': [], 'predicate': []}
    clauses, queries = [], []
    for statement in statements:
        match statement:
            case (kind, names):
                declared[kind].extend(names)
            case Clause():
                clauses.append(statement)
            case Query():
                queries.append(statement)

    if any(declared.values()):
        directives = Signature(
            constants=tuple(declared['constant']),
            functions=tuple(declared['function']),
            predicates=tuple(declared['predicate']),
        )
    else:
        directives = None
    return directives, clauses, queries


def _effective_signature(
    directives: Signature | None,
    sig: Signature | None,
    *objects,
) -> Signature:
    """Explicit signature first, directives next, inference last."""
    if sig is not None:
        if directives is not None:
            for name in directives.constants + directives.functions \
                    + directives.predicates:
                if sig.role_of(name) is None:
                    raise ValidationError(
                        ErrorCode.FOREIGN_SYMBOL,
                        f"declared symbol '{name}' is not in the signature"
                    )
        return sig
    if directives is not None:
        return directives
    return infer_signature(*objects)


def parse_program(
    text: str,
    sig: Signature | None = None,
) -> tuple[Program, Signature]:
    """Parse a program file.

    Args:
    - text (str): Program text, see the module docstring
    - sig (Signature, optional): Explicit language; all symbols must belong
        to it. Without it the `#` directives fix the language, and without
        those it is inferred from the occurring symbols

    Returns:
    - tuple: The Program and the effective Signature
    """
    directives, clauses, queries = _parse_statements(text)
    if queries:
        raise ParseError("a program file cannot contain queries")

    program = Program(tuple(clauses))
    effective = _effective_signature(directives, sig, program)
    validate(program, effective)
    return program, effective


def parse_query(
    text: str,
    sig: Signature | None = None,
) -> tuple[Query, Signature]:
    """Parse a single `?- L1, ..., Lk.` query."""
    directives, clauses, queries = _parse_statements(text)
    if clauses or len(queries) != 1:
        raise ParseError("expected exactly one query of the form ?- L1, ..., Lk.")

    query = queries[0]
    effective = _effective_signature(directives, sig, query)
    validate(query, effective)
    return query, effective


def parse_language(text: str) -> Signature:
    """Parse a language file: directives only, in the order they fix L."""
    directives, clauses, queries = _parse_statements(text)
    if clauses or queries:
        raise ParseError("a language file may only contain directives")
    return directives if directives is not None else Signature()


def parse_formula(text: str, sig: Signature | None = None):
    """Parse a formula over sig.

    Args:
    - text (str): Formula in the formula grammar
    - sig (Signature, optional): Language of the formula; inferred from
        the occurring symbols when absent

    Returns:
    - Formula: The AST

    Raises:
    - ParseError: On syntax errors, with line and column
    - ValidationError: On arity violations or unknown symbols
    """
    formula = _run(_FORMULA_PARSER, _FormulaBuilder(), text)
    validate(formula, sig if sig is not None else infer_signature(formula))
    return formula
