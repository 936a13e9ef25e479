import itertools
from dataclasses import dataclass, field

import numpy as np

from engine.models import ModelPresentation, NonRoot, Root, induced_fn, predecessor
from engine.automata import RegularSet, letter_label
from engine.regex import regular_set
from logic.errors import ValidationError
from logic.syntax import (
    Signature, Var, Const, Apply, Atom, Eq, Not, And, Or, Implies, Iff,
    Exists, Forall, Truth, Falsity, Formula, Term,
)
from reduction.sns import letters

SEED = 20240607


def make_rng(offset: int = 0) -> np.random.Generator:
    return np.random.default_rng(SEED + offset)


# ---------- Random syntax ----------

def random_signature(rng: np.random.Generator, max_size: int = 2) -> Signature:
    k, n, m = (int(v) for v in rng.integers(0, max_size + 1, size=3))
    return Signature(
        constants=tuple(f"c{j}" for j in range(1, k + 1)),
        functions=tuple(f"f{i}" for i in range(1, n + 1)),
        predicates=tuple(f"p{l}" for l in range(1, m + 1)),
    )


def random_term(rng, sig: Signature, scope: list[str], nesting: int = 2):
    """A term over the variables in scope and the constants, None if there
    is nothing to build one from.
    """
    bases = [Var(v) for v in scope] + [Const(c) for c in sig.constants]
    if not bases:
        return None
    term = bases[int(rng.integers(len(bases)))]
    if sig.functions:
        for _ in range(int(rng.integers(0, nesting + 1))):
            term = Apply(sig.functions[int(rng.integers(sig.n))], term)
    return term


def _random_atom(rng, sig: Signature, scope: list[str]) -> Formula:
    left = random_term(rng, sig, scope)
    if left is None:
        return Truth() if rng.random() < 0.5 else Falsity()
    if sig.predicates and rng.random() < 0.6:
        return Atom(sig.predicates[int(rng.integers(sig.m))], left)
    return Eq(left, random_term(rng, sig, scope))


def random_formula(
    rng: np.random.Generator,
    sig: Signature,
    depth: int = 4,
    scope: list[str] | None = None,
) -> Formula:
    """A closed formula (for scope None) with at most `depth` nested
    quantifiers. Variable names are reused so that shadowing occurs.
    """
    scope = scope or []
    if depth == 0 or rng.random() < 0.25:
        return _random_atom(rng, sig, scope)

    choice = int(rng.integers(7))
    match choice:
        case 0:
            return Not(random_formula(rng, sig, depth, scope))
        case 1 | 2 | 3 | 4:
            connective = (And, Or, Implies, Iff)[choice - 1]
            return connective(
                random_formula(rng, sig, depth - 1, scope),
                random_formula(rng, sig, depth - 1, scope),
            )
    var = ('X', 'Y', 'Z')[int(rng.integers(3))]
    quantifier = Exists if rng.random() < 0.5 else Forall
    return quantifier(var, random_formula(rng, sig, depth - 1, scope + [var]))


# ---------- Naive evaluation on finite structures ----------

@dataclass
class FiniteStructure:
    """A finite interpretation of a signature, elements 0..size-1."""
    size: int
    constants: dict[str, int] = field(default_factory=dict)
    functions: dict[str, np.ndarray] = field(default_factory=dict)
    predicates: dict[str, frozenset] = field(default_factory=dict)


def random_structure(rng, sig: Signature, max_size: int = 4) -> FiniteStructure:
    size = int(rng.integers(1, max_size + 1))
    return FiniteStructure(
        size=size,
        constants={c: int(rng.integers(size)) for c in sig.constants},
        functions={f: rng.integers(size, size=size) for f in sig.functions},
        predicates={
            p: frozenset(np.flatnonzero(rng.random(size) < 0.5).tolist())
            for p in sig.predicates
        },
    )


def naive_value(term: Term, structure: FiniteStructure, env: dict) -> int:
    match term:
        case Var(name):
            return env[name]
        case Const(name):
            return structure.constants[name]
        case Apply(function, arg):
            return int(structure.functions[function][
                naive_value(arg, structure, env)
            ])


def naive_truth(
    formula: Formula,
    structure: FiniteStructure,
    env: dict | None = None,
) -> bool:
    env = env or {}
    match formula:
        case Truth():
            return True
        case Falsity():
            return False
        case Atom(predicate, arg):
            return naive_value(arg, structure, env) \
                in structure.predicates[predicate]
        case Eq(left, right):
            return naive_value(left, structure, env) \
                == naive_value(right, structure, env)
        case Not(body):
            return not naive_truth(body, structure, env)
        case And(l, r):
            return naive_truth(l, structure, env) and naive_truth(r, structure, env)
        case Or(l, r):
            return naive_truth(l, structure, env) or naive_truth(r, structure, env)
        case Implies(l, r):
            return not naive_truth(l, structure, env) \
                or naive_truth(r, structure, env)
        case Iff(l, r):
            return naive_truth(l, structure, env) == naive_truth(r, structure, env)
        case Exists(var, body):
            return any(
                naive_truth(body, structure, {**env, var: e})
                for e in range(structure.size)
            )
        case Forall(var, body):
            return all(
                naive_truth(body, structure, {**env, var: e})
                for e in range(structure.size)
            )
    raise TypeError(f"not a formula: {formula!r}")


# ---------- Naive relations on addresses ----------

def all_words(n: int, max_length: int):
    """Every address over n functions up to a length, shortest first."""
    for length in range(max_length + 1):
        yield from itertools.product(letters(n), repeat=length)


def random_word(rng, n: int, max_length: int) -> tuple[int, ...]:
    length = int(rng.integers(0, max_length + 1))
    alphabet = letters(n)
    return tuple(alphabet[int(i)] for i in rng.integers(len(alphabet), size=length))


def naive_relation(kind: str, args: tuple, words: dict) -> bool:
    """Direct evaluation of the atomic relations of the automata kernel."""
    match kind:
        case 'equal':
            x, y = args
            return words[x] == words[y]
        case 'extension':
            x, y, word = args
            return words[y] == words[x] + tuple(word)
        case 'singleton':
            x, word = args
            return words[x] == tuple(word)
        case 'member':
            x, members = args
            return words[x] in members
    raise ValueError(kind)


# ---------- Neighbourhoods ----------

def neighbourhood(
    domain: RegularSet,
    address: tuple[int, ...],
    radius: int,
    cache: dict | None = None,
) -> tuple:
    """Unfolding of the function graph around an element up to a radius:
    forward along every f_g, backward to the predecessor. Two elements with
    different unfoldings are not related by any isomorphism. Pass the same
    cache for the elements of one domain.
    """
    if radius == 0:
        return ()
    if cache is not None and (address, radius) in cache:
        return cache[(address, radius)]
    branches = []
    for g in range(1, domain.n + 1):
        try:
            image = induced_fn(domain, g, address)
        except ValidationError:
            branches.append(('f', g, None))
            continue
        branches.append(('f', g, neighbourhood(domain, image, radius - 1, cache)))
    origin = predecessor(domain, address)
    if origin is None:
        branches.append(('b', None))
    else:
        g, source = origin
        branches.append(('b', g, neighbourhood(domain, source, radius - 1, cache)))
    if cache is not None:
        cache[(address, radius)] = tuple(branches)
    return tuple(branches)


def spine_address(j: int, component: NonRoot, i: int) -> tuple[int, ...]:
    """Address of the spine element a_i of the j-th component."""
    return (0,) * j + tuple(-component.letter(t) for t in range(1, i + 1))


# ---------- Catalog ----------

def component_language(j: int, n: int) -> RegularSet:
    """0^j followed by letters other than 0: where the j-th component lives."""
    text = ' '.join(['0'] * j)
    labels = [letter_label(letter) for letter in letters(n) if letter != 0]
    if labels:
        text += f" ({' | '.join(labels)})*"
    return regular_set(text, n)


def _signature(k: int, n: int, m: int = 1) -> Signature:
    return Signature(
        constants=tuple('abc'[:k]),
        functions=tuple('fgh'[:n]),
        predicates=tuple('pqr'[:m]),
    )


def presentation_catalog() -> list[ModelPresentation]:
    """Presentations covering both component kinds, repeated components,
    languages without constants and with two functions.
    """
    f, g = 1, 2
    entries = [
        (1, 1, ()),
        (2, 1, ()),
        (1, 1, (Root(),)),
        (1, 1, (NonRoot((), (f,)),)),
        (1, 1, (Root(), NonRoot((), (f,)))),
        (1, 1, (NonRoot((f,), (f,)),)),
        (1, 1, (NonRoot((), (f,)), NonRoot((), (f,)))),
        (0, 1, (Root(),)),
        (0, 1, (NonRoot((), (f,)),)),
        (0, 1, (Root(), Root())),
        (1, 2, ()),
        (1, 2, (NonRoot((), (f,)),)),
        (1, 2, (NonRoot((), (g,)),)),
        (1, 2, (NonRoot((), (f, g)),)),
        (1, 2, (NonRoot((g,), (f,)),)),
        (1, 2, (NonRoot((f, g), (g, f)),)),
        (1, 2, (Root(), NonRoot((g,), (f, g)))),
        (2, 2, (NonRoot((), (g,)),)),
        (0, 2, (NonRoot((f, f), (g,)),)),
        (0, 2, (Root(), NonRoot((), (f, g, g)))),
        (2, 0, ()),
        (0, 0, (Root(),)),
    ]
    return [
        ModelPresentation(_signature(k, n), tuple(extra))
        for k, n, extra in entries
    ]


# ---------- Random S(2n+1)S formulas ----------

def random_sns_term(rng, objects: list[str], n: int = 2):
    from reduction.sns import Lam, ObjVar, Succ
    options = [Lam()] + [ObjVar(v) for v in objects]
    term = options[int(rng.integers(len(options)))]
    alphabet = letters(n)
    for _ in range(int(rng.integers(0, 4))):
        term = Succ(alphabet[int(rng.integers(len(alphabet)))], term)
    return term


def random_sns_formula(rng, depth: int = 4, objects: list[str] | None = None):
    """Random formula of every S(2n+1)S construct, free variables allowed."""
    from reduction.sns import (
        SEq, SMember, SNot, SAnd, SOr, SXor, SImplies, SIff, ExistsObj,
        ForallObj, ExistsSet, ForallSet, STrue, SFalse,
    )
    objects = objects or []
    if depth == 0 or rng.random() < 0.2:
        match int(rng.integers(4)):
            case 0:
                return SEq(random_sns_term(rng, objects),
                           random_sns_term(rng, objects))
            case 1:
                set_var = ('X', 'Y1', 'Z')[int(rng.integers(3))]
                return SMember(random_sns_term(rng, objects), set_var)
            case 2:
                return STrue()
            case 3:
                return SFalse()

    def sub():
        return random_sns_formula(rng, depth - 1, objects)

    match int(rng.integers(8)):
        case 0:
            return SNot(sub())
        case 1:
            return SAnd(tuple(sub() for _ in range(int(rng.integers(0, 4)))))
        case 2:
            return SOr(tuple(sub() for _ in range(int(rng.integers(0, 4)))))
        case 3:
            binary = (SXor, SImplies, SIff)[int(rng.integers(3))]
            return binary(sub(), sub())
        case 4 | 5:
            var = ('x', 'y', 'z', '_v0')[int(rng.integers(4))]
            quantifier = ExistsObj if rng.random() < 0.5 else ForallObj
            return quantifier(
                var, random_sns_formula(rng, depth - 1, objects + [var])
            )
    var = ('X', 'Y1', 'Z')[int(rng.integers(3))]
    quantifier = ExistsSet if rng.random() < 0.5 else ForallSet
    return quantifier(var, sub())
