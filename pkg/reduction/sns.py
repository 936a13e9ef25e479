"""
S(2n+1)S syntax and the reduction of a monadic sentence to it.

Successor letters are plain ints: 0 is f_0, i is f_i and -i is f_i^-1, so
the canonical letter order of a language with n functions is
0, 1, ..., n, -1, ..., -n. A term Succ(a, t) denotes f_a(t), i.e. the
address of t followed by the letter a.

Object variables of the first order formula are carried over with their
first character lowercased (X1 becomes x1), the set variables are X for the
domain and Y1..Ym for the predicates.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from logic.errors import ErrorCode, ValidationError
from logic.syntax import (
    Signature, Var, Const, Apply, Atom, Eq, Not, Or, Exists, Truth, Falsity,
    Formula, Term, free_variables, validate,
)
from logic.simpleform import is_simple, is_normalized, simplify

DOMAIN_VAR = 'X'


# ---------- Letters ----------

def letters(n: int) -> tuple[int, ...]:
    """The 2n+1 successor letters in canonical order."""
    return (0,) + tuple(range(1, n + 1)) + tuple(-i for i in range(1, n + 1))


def letter_name(letter: int) -> str:
    """s0, s1..sn for f_0..f_n and b1..bn for the inverses."""
    return f"b{-letter}" if letter < 0 else f"s{letter}"


def predicate_var(index: int) -> str:
    return f"Y{index}"


def object_var(name: str) -> str:
    return name[0].lower() + name[1:]


# ---------- Terms ----------

@dataclass(frozen=True)
class Lam:
    pass


@dataclass(frozen=True)
class ObjVar:
    name: str


@dataclass(frozen=True)
class Succ:
    letter: int
    arg: SnSTerm


SnSTerm = Union[Lam, ObjVar, Succ]


def word_term(word, base: SnSTerm | None = None) -> SnSTerm:
    """The term reaching address base.word, base defaulting to Lambda."""
    term = Lam() if base is None else base
    for letter in word:
        term = Succ(letter, term)
    return term


def term_address(term: SnSTerm) -> tuple[str | None, tuple[int, ...]]:
    """Splits a term into its base variable (None for Lambda) and the word
    of letters applied to it, innermost first.
    """
    word: list[int] = []
    while isinstance(term, Succ):
        word.append(term.letter)
        term = term.arg
    word.reverse()
    match term:
        case ObjVar(name):
            return name, tuple(word)
    return None, tuple(word)


# ---------- Formulas ----------

@dataclass(frozen=True)
class SEq:
    left: SnSTerm
    right: SnSTerm


@dataclass(frozen=True)
class SMember:
    term: SnSTerm
    set_var: str


@dataclass(frozen=True)
class SNot:
    body: SnSFormula


@dataclass(frozen=True)
class SAnd:
    parts: tuple[SnSFormula, ...]


@dataclass(frozen=True)
class SOr:
    parts: tuple[SnSFormula, ...]


@dataclass(frozen=True)
class SXor:
    left: SnSFormula
    right: SnSFormula


@dataclass(frozen=True)
class SImplies:
    left: SnSFormula
    right: SnSFormula


@dataclass(frozen=True)
class SIff:
    left: SnSFormula
    right: SnSFormula


@dataclass(frozen=True)
class ExistsObj:
    var: str
    body: SnSFormula


@dataclass(frozen=True)
class ForallObj:
    var: str
    body: SnSFormula


@dataclass(frozen=True)
class ExistsSet:
    var: str
    body: SnSFormula


@dataclass(frozen=True)
class ForallSet:
    var: str
    body: SnSFormula


@dataclass(frozen=True)
class STrue:
    pass


@dataclass(frozen=True)
class SFalse:
    pass


SnSFormula = Union[
    SEq, SMember, SNot, SAnd, SOr, SXor, SImplies, SIff,
    ExistsObj, ForallObj, ExistsSet, ForallSet, STrue, SFalse,
]


def s_and(parts) -> SnSFormula:
    """Conjunction of a group: True when empty, the part itself when single."""
    parts = tuple(parts)
    if not parts:
        return STrue()
    if len(parts) == 1:
        return parts[0]
    return SAnd(parts)


def s_or(parts) -> SnSFormula:
    """Disjunction of a group: False when empty, the part itself when single."""
    parts = tuple(parts)
    if not parts:
        return SFalse()
    if len(parts) == 1:
        return parts[0]
    return SOr(parts)


def not_member(term: SnSTerm, set_var: str) -> SnSFormula:
    return SNot(SMember(term, set_var))


def subset_of(inner: str, outer: str, var: str = 'x') -> SnSFormula:
    """inner ⊆ outer, spelled out as forall x (x in inner -> x in outer)."""
    x = ObjVar(var)
    return ForallObj(var, SImplies(SMember(x, inner), SMember(x, outer)))


def relativize(var: str, body: SnSFormula, set_var: str = DOMAIN_VAR):
    """exists var (var in set_var & body)"""
    return ExistsObj(var, SAnd((SMember(ObjVar(var), set_var), body)))


def _term_vars(term: SnSTerm) -> frozenset[str]:
    name, _ = term_address(term)
    return frozenset() if name is None else frozenset({name})


@lru_cache(maxsize=None)
def sns_free_variables(
    formula: SnSFormula,
) -> tuple[frozenset[str], frozenset[str]]:
    """Free (object, set) variables of a formula."""
    match formula:
        case SEq(left, right):
            return _term_vars(left) | _term_vars(right), frozenset()
        case SMember(term, set_var):
            return _term_vars(term), frozenset({set_var})
        case SNot(body):
            return sns_free_variables(body)
        case SAnd(parts) | SOr(parts):
            objects, sets = frozenset(), frozenset()
            for part in parts:
                o, s = sns_free_variables(part)
                objects, sets = objects | o, sets | s
            return objects, sets
        case SXor(l, r) | SImplies(l, r) | SIff(l, r):
            lo, ls = sns_free_variables(l)
            ro, rs = sns_free_variables(r)
            return lo | ro, ls | rs
        case ExistsObj(var, body) | ForallObj(var, body):
            objects, sets = sns_free_variables(body)
            return objects - {var}, sets
        case ExistsSet(var, body) | ForallSet(var, body):
            objects, sets = sns_free_variables(body)
            return objects, sets - {var}
    return frozenset(), frozenset()


# ---------- domain(X) ----------

def _root(j: int) -> SnSTerm:
    """f_0^j(Lambda), the address of the j-th constant."""
    return word_term((0,) * j)


def build_domain(sig: Signature) -> SnSFormula:
    """domain(X): the five clause groups describing the subsets of the tree
    that present models of CET over sig.

    Args:
    - sig (Signature): The language; only k and n matter

    Returns:
    - SnSFormula: SAnd of exactly five parts, empty groups being True
        (a disjunction without disjuncts is False)
    """
    k, n = sig.k, sig.n
    x, y = ObjVar('x'), ObjVar('y')
    functions = range(1, n + 1)

    # (1) every constant is in X
    roots = s_and(SMember(_root(j), DOMAIN_VAR) for j in range(1, k + 1))

    # (2) every element has exactly one f_i image: forward or back
    if n:
        images = s_and(
            SXor(
                SMember(Succ(i, x), DOMAIN_VAR),
                ExistsObj('y', SAnd((
                    SMember(y, DOMAIN_VAR),
                    SEq(x, Succ(-i, y)),
                ))),
            )
            for i in functions
        )
        totality = ForallObj('x', SImplies(SMember(x, DOMAIN_VAR), images))
    else:
        totality = STrue()

    # (3) constants have no predecessor
    no_predecessor = s_and(
        not_member(Succ(-i, _root(j)), DOMAIN_VAR)
        for j in range(1, k + 1) for i in functions
    )

    # (4) a forward image has no backward branch
    if n:
        forward_only = s_and(
            ForallObj('x', SImplies(
                SAnd((
                    SMember(x, DOMAIN_VAR),
                    SMember(Succ(i, x), DOMAIN_VAR),
                )),
                s_and(
                    not_member(Succ(-j, Succ(i, x)), DOMAIN_VAR)
                    for j in functions
                ),
            ))
            for i in functions
        )
    else:
        forward_only = STrue()

    # (5) at most one predecessor
    if n:
        clashes = s_or(
            SAnd((
                SMember(Succ(-i, x), DOMAIN_VAR),
                SMember(Succ(-j, x), DOMAIN_VAR),
            ))
            for i in functions for j in functions if i < j
        )
        unique_predecessor = ForallObj('x', SNot(clashes))
    else:
        unique_predecessor = STrue()

    return SAnd((roots, totality, no_predecessor, forward_only,
                 unique_predecessor))


# ---------- Mod_F ----------

def _translate_term(term: Term, sig: Signature) -> SnSTerm:
    match term:
        case Var(name):
            return ObjVar(object_var(name))
        case Const(name):
            return _root(sig.constant_index(name))
    raise ValidationError(
        ErrorCode.NOT_SIMPLE, f"function application outside y = f(x): {term}"
    )


def _translate(formula: Formula, sig: Signature) -> SnSFormula:
    match formula:
        case Truth():
            return STrue()
        case Falsity():
            return SFalse()
        case Atom(predicate, arg):
            return SMember(
                _translate_term(arg, sig),
                predicate_var(sig.predicate_index(predicate)),
            )
        case Eq(Var(y), Apply(function, Var(x))):
            i = sig.function_index(function)
            y_term, x_term = ObjVar(object_var(y)), ObjVar(object_var(x))
            return SOr((SEq(y_term, Succ(i, x_term)),
                        SEq(x_term, Succ(-i, y_term))))
        case Eq(left, right):
            return SEq(_translate_term(left, sig), _translate_term(right, sig))
        case Not(body):
            return SNot(_translate(body, sig))
        case Or(left, right):
            return SOr((_translate(left, sig), _translate(right, sig)))
        case Exists(var, body):
            return relativize(object_var(var), _translate(body, sig))
    raise ValidationError(
        ErrorCode.NOT_NORMALIZED,
        f"connective {type(formula).__name__} outside the |, ~, exists basis"
    )


def build_mod(formula: Formula, sig: Signature) -> SnSFormula:
    """Mod_F(X, Y1..Ym) for a closed, simple and normalized formula.

    Args:
    - formula (Formula): Output of normalize(flatten(F))
    - sig (Signature): The language

    Returns:
    - SnSFormula: With free set variables among X, Y1..Ym

    Raises:
    - ValidationError: OPEN_FORMULA, NOT_SIMPLE or NOT_NORMALIZED
    """
    if free_variables(formula):
        raise ValidationError(
            ErrorCode.OPEN_FORMULA,
            f"free variables: {', '.join(sorted(free_variables(formula)))}"
        )
    if not is_simple(formula):
        raise ValidationError(ErrorCode.NOT_SIMPLE, "formula is not simple")
    if not is_normalized(formula):
        raise ValidationError(
            ErrorCode.NOT_NORMALIZED, "formula uses connectives besides |, ~, exists"
        )
    return _translate(formula, sig)


def assemble_sentence(formula: Formula, sig: Signature) -> SnSFormula:
    """exists X, Y1..Ym (domain(X) & Y1 ⊆ X & ... & Ym ⊆ X & Mod_F'), with
    F' = normalize(flatten(F)).
    """
    validate(formula, sig, require_closed=True)
    mod = build_mod(simplify(formula), sig)

    set_vars = [predicate_var(l) for l in range(1, sig.m + 1)]
    parts = [build_domain(sig)]
    parts.extend(subset_of(y, DOMAIN_VAR) for y in set_vars)
    parts.append(mod)

    sentence: SnSFormula = SAnd(tuple(parts))
    for var in reversed([DOMAIN_VAR] + set_vars):
        sentence = ExistsSet(var, sentence)
    return sentence
