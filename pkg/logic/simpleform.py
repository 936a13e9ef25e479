"""
Simple form and connective normalisation.

A formula is simple when every function symbol occurs in an equation of the
exact shape y = f(x) with x, y variables. `flatten` reaches that shape by
repeatedly replacing the leftmost-innermost offending application f(t) in an
atom A(f(t)) with

    exists x. exists y. (x = t & y = f(x) & A(y))

and `normalize` rewrites into the {|, ~, exists} basis.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ErrorCode, ValidationError
from .syntax import (
    Var, Apply, Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall,
    Truth, Falsity, Formula, Term, FreshNames, conjunction, variable_names,
)


def _simple_equation(formula: Formula) -> bool:
    """y = f(x) with both sides built from variables only."""
    match formula:
        case Eq(Var(), Apply(_, Var())):
            return True
    return False


def _has_application(term: Term) -> bool:
    return isinstance(term, Apply)


def _atom_is_simple(formula: Formula) -> bool:
    match formula:
        case Atom(_, arg):
            return not _has_application(arg)
        case Eq(left, right):
            if _simple_equation(formula):
                return True
            return not (_has_application(left) or _has_application(right))
    return True


def is_simple(formula: Formula) -> bool:
    """Every function occurrence sits in an equation y = f(x)."""
    match formula:
        case Atom() | Eq():
            return _atom_is_simple(formula)
        case Not(body) | Exists(_, body) | Forall(_, body):
            return is_simple(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return is_simple(l) and is_simple(r)
    return True


def is_normalized(formula: Formula) -> bool:
    """Only atoms, equations, true, false, ~, | and exists occur."""
    match formula:
        case Atom() | Eq() | Truth() | Falsity():
            return True
        case Not(body) | Exists(_, body):
            return is_normalized(body)
        case Or(l, r):
            return is_normalized(l) and is_normalized(r)
    return False


@dataclass(frozen=True)
class SimpleFormula:
    """A formula together with the checked guarantee that it is simple."""
    formula: Formula

    def __post_init__(self):
        if not is_simple(self.formula):
            raise ValidationError(
                ErrorCode.NOT_SIMPLE,
                "formula contains a function symbol outside y = f(x)"
            )


# ---------- Flattening ----------

def _innermost(term: Term) -> Apply | None:
    """The innermost application of a term, i.e. f(t) with t not applied."""
    match term:
        case Apply(_, Apply() as inner):
            return _innermost(inner)
        case Apply():
            return term
    return None


def _replace(term: Term, target: Apply, by: Term) -> Term:
    """Replace the (unique, innermost) occurrence `target` within term."""
    if term is target:
        return by
    match term:
        case Apply(function, arg):
            return Apply(function, _replace(arg, target, by))
    return term


def _rewrite_atom(atom: Formula, fresh: FreshNames) -> tuple[Formula, FreshNames]:
    """Flattens one atom, leftmost-innermost violation first, to a fixpoint."""
    if _atom_is_simple(atom):
        return atom, fresh

    match atom:
        case Atom(predicate, arg):
            target = _innermost(arg)

            def context(y: Term) -> Formula:
                return Atom(predicate, _replace(arg, target, y))
        case Eq(left, right):
            if _has_application(left):
                target = _innermost(left)

                def context(y: Term) -> Formula:
                    return Eq(_replace(left, target, y), right)
            else:
                target = _innermost(right)

                def context(y: Term) -> Formula:
                    return Eq(left, _replace(right, target, y))

    x_name, fresh = fresh.take()
    y_name, fresh = fresh.take()
    x, y = Var(x_name), Var(y_name)

    rest, fresh = _rewrite_atom(context(y), fresh)
    body = conjunction([Eq(x, target.arg), Eq(y, Apply(target.function, x)), rest])
    return Exists(x_name, Exists(y_name, body)), fresh


def _flatten(formula: Formula, fresh: FreshNames) -> tuple[Formula, FreshNames]:
    match formula:
        case Atom() | Eq():
            return _rewrite_atom(formula, fresh)
        case Not(body):
            body, fresh = _flatten(body, fresh)
            return Not(body), fresh
        case Exists(var, body):
            body, fresh = _flatten(body, fresh)
            return Exists(var, body), fresh
        case Forall(var, body):
            body, fresh = _flatten(body, fresh)
            return Forall(var, body), fresh
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            l, fresh = _flatten(l, fresh)
            r, fresh = _flatten(r, fresh)
            return type(formula)(l, r), fresh
    return formula, fresh


def fresh_supply(formula: Formula) -> FreshNames:
    """Names _v0, _v1, ... skipping every variable already in formula."""
    return FreshNames(prefix='_v', counter=0, avoid=variable_names(formula))


def flatten(
    formula: Formula,
    fresh: FreshNames | None = None,
) -> tuple[SimpleFormula, FreshNames]:
    """Rewrite a formula into an equivalent simple formula.

    Args:
    - formula (Formula): A validated formula
    - fresh (FreshNames, optional): Supply for the introduced variables,
        defaults to `fresh_supply(formula)`

    Returns:
    - tuple: The SimpleFormula and the advanced supply
    """
    if fresh is None:
        fresh = fresh_supply(formula)
    result, fresh = _flatten(formula, fresh)
    return SimpleFormula(result), fresh


# ---------- Normalisation ----------

def normalize(formula: Formula) -> Formula:
    """Eliminates &, ->, <-> and forall through the usual dualities.

    Double negations are kept, so the output mirrors the input structure.
    """
    match formula:
        case Not(body):
            return Not(normalize(body))
        case Or(l, r):
            return Or(normalize(l), normalize(r))
        case And(l, r):
            return Not(Or(Not(normalize(l)), Not(normalize(r))))
        case Implies(l, r):
            return Or(Not(normalize(l)), normalize(r))
        case Iff(l, r):
            return normalize(And(Implies(l, r), Implies(r, l)))
        case Exists(var, body):
            return Exists(var, normalize(body))
        case Forall(var, body):
            return Not(Exists(var, Not(normalize(body))))
    return formula


def simplify(formula: Formula) -> Formula:
    """normalize(flatten(F)), the formula Mod is built from."""
    simple, _ = flatten(formula)
    return normalize(simple.formula)


def function_depths(formula: Formula) -> list[int]:
    """Nesting depths of all function applications at violating positions,
    sorted descending. Strictly decreases (as a multiset) under each rewrite.
    """
    depths: list[int] = []

    def term_depth(term: Term) -> int:
        match term:
            case Apply(_, arg):
                return 1 + term_depth(arg)
        return 0

    def walk(f: Formula):
        match f:
            case Atom() | Eq():
                if not _atom_is_simple(f):
                    terms = [f.arg] if isinstance(f, Atom) else [f.left, f.right]
                    depths.extend(term_depth(t) for t in terms if term_depth(t))
            case Not(body) | Exists(_, body) | Forall(_, body):
                walk(body)
            case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
                walk(l)
                walk(r)

    walk(formula)
    return sorted(depths, reverse=True)
