"""
Clark's completion of a monadic program: general forms of clauses, the
definition of every predicate of the language, and a finite-depth
instantiation of the freeness axioms of Clark's equational theory.

Equality axioms are not emitted: every structure downstream interprets `=`
as identity, which makes them hold automatically.
"""
from __future__ import annotations

import json
import itertools
from dataclasses import dataclass

from .syntax import (
    Signature, Var, Const, Apply, Atom, Eq, Not, Iff, Implies, Formula,
    Clause, Program, Query, FreshNames, conjunction, disjunction,
    exists_all, forall_all, clause_variables, format_formula, Term,
)


@dataclass(frozen=True)
class GeneralForm:
    """p(x_1) <- exists y_1..y_k (x_1 = t & L_1 & ... & L_m)

    Attributes:
    - predicate (str): Name of the head predicate
    - head_var (str): The fresh variable x_1
    - body (Formula): The right hand side
    """
    predicate: str
    head_var: str
    body: Formula

    def to_formula(self) -> Formula:
        """The general form read as an implication (body -> head)."""
        return Implies(self.body, Atom(self.predicate, Var(self.head_var)))


@dataclass(frozen=True)
class CompletionSet:
    """One definition per predicate of the language, in signature order.

    Attributes:
    - sig (Signature): The language L the completion depends on
    - definitions (tuple[Formula]): forall x_1 (p(x_1) <-> E_1 | ... | E_k)
    """
    sig: Signature
    definitions: tuple[Formula, ...]

    def __post_init__(self):
        assert len(self.definitions) == self.sig.m, \
            "Every predicate needs exactly one definition"

    def formula(self) -> Formula:
        """Conjunction of all definitions, Truth for a language without
        predicates.
        """
        return conjunction(list(self.definitions))


def general_form(clause: Clause, fresh: FreshNames) -> GeneralForm:
    """Rewrite a clause p(t) <- L_1, ..., L_m into its general form.

    Args:
    - clause (Clause): A validated clause
    - fresh (FreshNames): Supply for the head variable; it must avoid the
        variables of the clause

    Returns:
    - GeneralForm: With body exists y_1..y_k (x_1 = t & L_1 & ... & L_m),
        the y_j being the clause variables (the block is left out if there
        are none)
    """
    head_var, _ = fresh.take()
    variables = clause_variables(clause)
    assert head_var not in variables, "Head variable would be captured"

    equation = Eq(Var(head_var), clause.head.arg)
    literals = [literal.to_formula() for literal in clause.body]
    body = exists_all(variables, conjunction([equation] + literals))
    return GeneralForm(clause.head.predicate, head_var, body)


def _head_supply(clauses: list[Clause]) -> FreshNames:
    """Fresh names X1, X2, ... avoiding every variable of the clauses."""
    avoid = frozenset(
        name for clause in clauses for name in clause_variables(clause)
    )
    return FreshNames(prefix='X', counter=1, avoid=avoid)


def predicate_definition(
    predicate: str,
    clauses: list[Clause],
) -> Formula:
    """forall x_1 (p(x_1) <-> E_1 | ... | E_k), program order, k = 0 gives
    forall x_1 (p(x_1) <-> false).
    """
    supply = _head_supply(clauses)
    head_var, _ = supply.take()

    # Every clause draws from an identical supply, so all share x_1
    bodies = [general_form(clause, supply).body for clause in clauses]
    return forall_all(
        [head_var],
        Iff(Atom(predicate, Var(head_var)), disjunction(bodies)),
    )


def completion_defs(program: Program, sig: Signature) -> CompletionSet:
    """Computes c_L(P): one definition for each predicate of sig.

    Args:
    - program (Program): A validated program
    - sig (Signature): The language L

    Returns:
    - CompletionSet: Definitions in signature order
    """
    definitions = []
    for predicate in sig.predicates:
        clauses = [
            clause for clause in program.clauses
            if clause.head.predicate == predicate
        ]
        definitions.append(predicate_definition(predicate, clauses))
    return CompletionSet(sig, tuple(definitions))


def program_definitions(program: Program, sig: Signature) -> Formula:
    return completion_defs(program, sig).formula()


def _function_word(word: tuple[str, ...], term: Term) -> Term:
    """f_1(f_2(...f_l(term)...)) for word (f_1, ..., f_l)."""
    for function in reversed(word):
        term = Apply(function, term)
    return term


def cet_axioms(sig: Signature, depth: int) -> list[Formula]:
    """Finite instantiation of the freeness axioms of CET_L.

    Args:
    - sig (Signature): The language L
    - depth (int): Maximal length (>= 1) of the function words in the
        acyclicity instances t(x) != x

    Returns:
    - list[Formula]: f(x) != g(y) for distinct f, g; f(x) != a; a != b;
        injectivity of every f; t(x) != x for all words t of length <= depth
    """
    assert depth >= 1, "Depth has to be positive"
    x, y = Var('X'), Var('Y')
    axioms: list[Formula] = []

    for f, g in itertools.combinations(sig.functions, 2):
        axioms.append(forall_all(
            ['X', 'Y'], Not(Eq(Apply(f, x), Apply(g, y)))
        ))

    for f in sig.functions:
        for a in sig.constants:
            axioms.append(forall_all(['X'], Not(Eq(Apply(f, x), Const(a)))))

    for a, b in itertools.combinations(sig.constants, 2):
        axioms.append(Not(Eq(Const(a), Const(b))))

    for f in sig.functions:
        axioms.append(forall_all(
            ['X', 'Y'], Implies(Eq(Apply(f, x), Apply(f, y)), Eq(x, y))
        ))

    # Ordered by length first, so depth d is a prefix of depth d + 1
    for length in range(1, depth + 1):
        for word in itertools.product(sig.functions, repeat=length):
            axioms.append(forall_all(
                ['X'], Not(Eq(_function_word(word, x), x))
            ))

    return axioms


def completion_document(
    completion: CompletionSet,
    cet: list[Formula] | None = None,
    output_format: str = 'text',
) -> str:
    """Renders the completion (and optionally CET) for the `complete` command.

    Args:
    - completion (CompletionSet): The definitions
    - cet (list[Formula], optional): CET instantiation to append
    - output_format (str): 'text' (formula grammar) or 'json'

    Returns:
    - str: The document
    """
    definitions = [format_formula(d) for d in completion.definitions]
    axioms = [format_formula(a) for a in cet] if cet is not None else None

    if output_format == 'json':
        document = {
            'signature': completion.sig.to_dict(),
            'signature_inferred': completion.sig.inferred,
            'definitions': dict(zip(completion.sig.predicates, definitions)),
        }
        if axioms is not None:
            document['cet'] = axioms
        return json.dumps(document, indent=2)

    lines = []
    if completion.sig.inferred:
        lines.append('% signature inferred from the program')
    lines.extend(definitions)
    if axioms is not None:
        lines.append('% CET')
        lines.extend(axioms)
    return '\n'.join(lines)


def least_model_atoms(
    program: Program,
    sig: Signature,
    depth: int,
) -> set[tuple[str, Term]]:
    """Ground atoms derivable from a definite program by naive bottom-up
    iteration over ground terms of nesting depth <= depth.

    Args:
    - program (Program): A definite program
    - sig (Signature): Its language
    - depth (int): Maximal number of nested function applications

    Returns:
    - set: Pairs (predicate, ground term)
    """
    assert program.is_definite, "Bottom-up iteration needs a definite program"

    universe = [Const(a) for a in sig.constants]
    layer = list(universe)
    for _ in range(depth):
        layer = [Apply(f, t) for f in sig.functions for t in layer]
        universe.extend(layer)

    facts: set[tuple[str, Term]] = set()
    changed = True
    while changed:
        changed = False
        for clause in program.clauses:
            variables = clause_variables(clause)
            for values in itertools.product(universe, repeat=len(variables)):
                binding = dict(zip(variables, values))
                body_holds = all(
                    (literal.atom.predicate,
                     _substitute(literal.atom.arg, binding)) in facts
                    for literal in clause.body
                )
                if not body_holds:
                    continue
                head = (clause.head.predicate,
                        _substitute(clause.head.arg, binding))
                if head[1] in universe and head not in facts:
                    facts.add(head)
                    changed = True
    return facts


def _substitute(term: Term, binding: dict[str, Term]) -> Term:
    match term:
        case Var(name):
            return binding[name]
        case Apply(function, arg):
            return Apply(function, _substitute(arg, binding))
    return term


def query_holds_in(
    facts: set[tuple[str, Term]],
    query: Query,
) -> bool:
    """True if a ground definite query holds in a set of ground atoms."""
    return all(
        (literal.atom.predicate, literal.atom.arg) in facts
        for literal in query.literals
    )
