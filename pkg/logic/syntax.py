"""
Abstract syntax of the monadic first-order language: signatures, terms,
formulas, program clauses and queries, plus the printer and the validation
step every pipeline entry point runs.

Symbols are referenced by name. Names are unique across the three symbol
lists of a Signature, so the name fixes the index (and with it the address
letters used later on). Everything in here is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ErrorCode, ValidationError


@dataclass(frozen=True)
class Signature:
    """The monadic language L.

    Attributes:
    - constants (tuple[str]): c_1..c_k, in order
    - functions (tuple[str]): f_1..f_n, in order
    - predicates (tuple[str]): p_1..p_m, in order
    - inferred (bool): True if collected from the occurring symbols instead
        of declared; reported in outputs, ignored for equality
    """
    constants: tuple[str, ...] = ()
    functions: tuple[str, ...] = ()
    predicates: tuple[str, ...] = ()
    inferred: bool = field(default=False, compare=False)

    def __post_init__(self):
        names = self.constants + self.functions + self.predicates
        seen = set()
        for name in names:
            if name in seen:
                raise ValidationError(
                    ErrorCode.DUPLICATE_SYMBOL,
                    f"symbol '{name}' is declared more than once"
                )
            seen.add(name)

    @property
    def k(self) -> int:
        return len(self.constants)

    @property
    def n(self) -> int:
        return len(self.functions)

    @property
    def m(self) -> int:
        return len(self.predicates)

    def constant_index(self, name: str) -> int:
        """1-based index j of constant c_j."""
        return self.constants.index(name) + 1

    def function_index(self, name: str) -> int:
        """1-based index i of function f_i."""
        return self.functions.index(name) + 1

    def predicate_index(self, name: str) -> int:
        """1-based index l of predicate p_l."""
        return self.predicates.index(name) + 1

    def role_of(self, name: str) -> str | None:
        if name in self.constants:
            return 'constant'
        if name in self.functions:
            return 'function'
        if name in self.predicates:
            return 'predicate'
        return None

    def to_dict(self) -> dict:
        return {
            'constants': list(self.constants),
            'functions': list(self.functions),
            'predicates': list(self.predicates),
        }

    @classmethod
    def from_dict(cls, data: dict) -> Signature:
        return cls(
            constants=tuple(data.get('constants', [])),
            functions=tuple(data.get('functions', [])),
            predicates=tuple(data.get('predicates', [])),
        )


# ---------- Terms ----------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Apply:
    function: str
    arg: Term


Term = Union[Var, Const, Apply]


# ---------- Formulas ----------

@dataclass(frozen=True)
class Atom:
    predicate: str
    arg: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall:
    var: str
    body: Formula


@dataclass(frozen=True)
class Truth:
    pass


@dataclass(frozen=True)
class Falsity:
    pass


Formula = Union[
    Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall, Truth, Falsity
]
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


# ---------- Programs ----------

@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def to_formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)


@dataclass(frozen=True)
class Clause:
    """A <- L_1, ..., L_m"""
    head: Atom
    body: tuple[Literal, ...] = ()


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...] = ()

    @property
    def is_definite(self) -> bool:
        return all(
            literal.positive
            for clause in self.clauses for literal in clause.body
        )


@dataclass(frozen=True)
class Query:
    literals: tuple[Literal, ...]

    def __post_init__(self):
        if not self.literals:
            raise ValidationError(
                ErrorCode.EMPTY_QUERY, "a query needs at least one literal"
            )

    @property
    def is_definite(self) -> bool:
        return all(literal.positive for literal in self.literals)


@dataclass(frozen=True)
class FreshNames:
    """Supply of fresh variable names `<prefix><counter>` that skips every
    name in `avoid`. Threaded explicitly: `take` returns the name and the
    advanced supply.
    """
    prefix: str = '_v'
    counter: int = 0
    avoid: frozenset[str] = frozenset()

    def take(self) -> tuple[str, FreshNames]:
        counter = self.counter
        while f"{self.prefix}{counter}" in self.avoid:
            counter += 1
        name = f"{self.prefix}{counter}"
        return name, FreshNames(self.prefix, counter + 1, self.avoid)


# ---------- Construction helpers ----------

def conjunction(parts: list[Formula]) -> Formula:
    """Right nested conjunction, the empty one is Truth."""
    if not parts:
        return Truth()
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = And(part, result)
    return result


def disjunction(parts: list[Formula]) -> Formula:
    """Right nested disjunction, the empty one is Falsity."""
    if not parts:
        return Falsity()
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Or(part, result)
    return result


def exists_all(names: list[str], body: Formula) -> Formula:
    for name in reversed(names):
        body = Exists(name, body)
    return body


def forall_all(names: list[str], body: Formula) -> Formula:
    for name in reversed(names):
        body = Forall(name, body)
    return body


# ---------- Traversals ----------

def term_variables(term: Term) -> Iterator[str]:
    match term:
        case Var(name):
            yield name
        case Apply(_, arg):
            yield from term_variables(arg)


def ordered_unique(names) -> list[str]:
    seen: dict[str, None] = {}
    for name in names:
        seen.setdefault(name, None)
    return list(seen)


def clause_variables(clause: Clause) -> list[str]:
    """Variables of a clause in order of first occurrence."""
    names = list(term_variables(clause.head.arg))
    for literal in clause.body:
        names.extend(term_variables(literal.atom.arg))
    return ordered_unique(names)


def query_variables(query: Query) -> list[str]:
    return ordered_unique(
        name for literal in query.literals
        for name in term_variables(literal.atom.arg)
    )


def query_formula(query: Query) -> Formula:
    """The implicit existential closure of a query."""
    body = conjunction([literal.to_formula() for literal in query.literals])
    return exists_all(query_variables(query), body)


def free_variables(formula: Formula) -> frozenset[str]:
    match formula:
        case Atom(_, arg):
            return frozenset(term_variables(arg))
        case Eq(left, right):
            return frozenset(term_variables(left)) \
                | frozenset(term_variables(right))
        case Not(body):
            return free_variables(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return free_variables(l) | free_variables(r)
        case Exists(var, body) | Forall(var, body):
            return free_variables(body) - {var}
        case _:
            return frozenset()


def variable_names(formula: Formula) -> frozenset[str]:
    """All variable names occurring in a formula, bound or free."""
    match formula:
        case Exists(var, body) | Forall(var, body):
            return variable_names(body) | {var}
        case Not(body):
            return variable_names(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return variable_names(l) | variable_names(r)
        case _:
            return free_variables(formula)


def _term_symbols(term: Term) -> Iterator[tuple[str, str]]:
    """Pre-order (role, name) pairs of a term."""
    match term:
        case Const(name):
            yield 'constant', name
        case Apply(function, arg):
            yield 'function', function
            yield from _term_symbols(arg)


def formula_symbols(formula: Formula) -> Iterator[tuple[str, str]]:
    """Pre-order (role, name) pairs, i.e. in textual order."""
    match formula:
        case Atom(predicate, arg):
            yield 'predicate', predicate
            yield from _term_symbols(arg)
        case Eq(left, right):
            yield from _term_symbols(left)
            yield from _term_symbols(right)
        case Not(body) | Exists(_, body) | Forall(_, body):
            yield from formula_symbols(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            yield from formula_symbols(l)
            yield from formula_symbols(r)


def program_symbols(program: Program) -> Iterator[tuple[str, str]]:
    for clause in program.clauses:
        yield from formula_symbols(clause.head)
        for literal in clause.body:
            yield from formula_symbols(literal.atom)


def query_symbols(query: Query) -> Iterator[tuple[str, str]]:
    for literal in query.literals:
        yield from formula_symbols(literal.atom)


def _symbols_of(obj) -> Iterator[tuple[str, str]]:
    match obj:
        case Program():
            return program_symbols(obj)
        case Query():
            return query_symbols(obj)
        case Clause():
            return program_symbols(Program((obj,)))
        case _:
            return formula_symbols(obj)


def infer_signature(*objects) -> Signature:
    """Collect the symbols of formulas, programs and queries in order of
    first occurrence. A name used in two roles is an arity violation.
    """
    roles: dict[str, str] = {}
    for obj in objects:
        for role, name in _symbols_of(obj):
            if roles.setdefault(name, role) != role:
                raise ValidationError(
                    ErrorCode.ARITY_VIOLATION,
                    f"symbol '{name}' is used both as {roles[name]} "
                    f"and as {role}"
                )

    def of_role(role):
        return tuple(name for name, r in roles.items() if r == role)

    return Signature(
        constants=of_role('constant'),
        functions=of_role('function'),
        predicates=of_role('predicate'),
        inferred=True,
    )


def validate(obj, sig: Signature, require_closed: bool = False) -> None:
    """Confirms monadic use of every symbol, membership in the signature and
    (if required) closedness. Identity on valid input.

    Args:
    - obj (Formula | Program | Query | Clause): What to check
    - sig (Signature): The language the object should belong to
    - require_closed (bool): Reject formulas with free variables

    Raises:
    - ValidationError: with code ARITY_VIOLATION, FOREIGN_SYMBOL or
        OPEN_FORMULA
    """
    for role, name in _symbols_of(obj):
        declared = sig.role_of(name)
        if declared is None:
            raise ValidationError(
                ErrorCode.FOREIGN_SYMBOL,
                f"{role} '{name}' does not belong to the signature"
            )
        if declared != role:
            raise ValidationError(
                ErrorCode.ARITY_VIOLATION,
                f"'{name}' is a {declared} but is used as a {role}"
            )

    if require_closed and not isinstance(obj, (Program, Query, Clause)):
        free = free_variables(obj)
        if free:
            raise ValidationError(
                ErrorCode.OPEN_FORMULA,
                f"formula has free variables: {', '.join(sorted(free))}"
            )


# ---------- Printing ----------

# Binding strength, higher binds tighter
_PRECEDENCE = {
    Exists: 0, Forall: 0,
    Implies: 1, Iff: 1,
    Or: 2,
    And: 3,
    Not: 4,
}
_OPERATORS = {And: '&', Or: '|', Implies: '->', Iff: '<->'}


def format_term(term: Term) -> str:
    match term:
        case Var(name) | Const(name):
            return name
        case Apply(function, arg):
            return f"{function}({format_term(arg)})"
    raise TypeError(f"not a term: {term!r}")


def _precedence(formula: Formula) -> int:
    if isinstance(formula, Not) and isinstance(formula.body, Eq):
        return 5  # printed as '!='
    return _PRECEDENCE.get(type(formula), 5)


def _operand(formula: Formula, parens: bool) -> str:
    text = format_formula(formula)
    # A quantifier extends as far right as possible, so it only goes
    # unbracketed at the top or directly below another quantifier
    if parens or isinstance(formula, QUANTIFIERS):
        return f"({text})"
    return text


def format_formula(formula: Formula) -> str:
    """Prints a formula in the formula grammar; parsing the result gives the
    same AST back.
    """
    match formula:
        case Truth():
            return 'true'
        case Falsity():
            return 'false'
        case Atom(predicate, arg):
            return f"{predicate}({format_term(arg)})"
        case Eq(left, right):
            return f"{format_term(left)} = {format_term(right)}"
        case Not(Eq(left, right)):
            return f"{format_term(left)} != {format_term(right)}"
        case Not(body):
            return '~' + _operand(body, _precedence(body) < 4)
        case Exists(var, body):
            return f"exists {var}. {format_formula(body)}"
        case Forall(var, body):
            return f"forall {var}. {format_formula(body)}"
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            level = _PRECEDENCE[type(formula)]
            left = _operand(l, _precedence(l) <= level)
            right = _operand(r, _precedence(r) < level)
            return f"{left} {_OPERATORS[type(formula)]} {right}"
    raise TypeError(f"not a formula: {formula!r}")


def format_literal(literal: Literal) -> str:
    atom = format_formula(literal.atom)
    return atom if literal.positive else f"not {atom}"


def format_clause(clause: Clause) -> str:
    head = format_formula(clause.head)
    if not clause.body:
        return f"{head}."
    body = ', '.join(format_literal(literal) for literal in clause.body)
    return f"{head} :- {body}."


def format_program(program: Program) -> str:
    return '\n'.join(format_clause(clause) for clause in program.clauses)


def format_query(query: Query) -> str:
    body = ', '.join(format_literal(literal) for literal in query.literals)
    return f"?- {body}."


def format_signature(sig: Signature) -> str:
    """Directive form of a signature, readable by parse_language."""
    lines = []
    for directive, names in (
        ('#constant', sig.constants),
        ('#function', sig.functions),
        ('#predicate', sig.predicates),
    ):
        if names:
            lines.append(f"{directive} {', '.join(names)}.")
    return '\n'.join(lines)
