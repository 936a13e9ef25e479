"""
Evaluation of first-order S(2n+1)S formulas under an assignment of regular
sets to the set variables.

A formula is compiled bottom-up into the SyncAutomaton of the relation it
defines on its free object variables: atoms become atomic automata, the
connectives become boolean combinations and an object quantifier becomes a
projection. A closed formula ends up as a track-less automaton, i.e. a
boolean. Ground terms are evaluated to addresses before compiling.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from logic.errors import ErrorCode, ValidationError
from logic.simpleform import simplify
from logic.syntax import Formula, Signature, validate
from reduction.sns import (
    SEq, SMember, SNot, SAnd, SOr, SXor, SImplies, SIff, ExistsObj,
    ForallObj, ExistsSet, ForallSet, STrue, SFalse, SnSFormula, SnSTerm,
    DOMAIN_VAR, build_domain, build_mod, predicate_var, sns_free_variables,
    term_address,
)
from .automata import (
    RegularSet, SyncAutomaton, combine, complement, constant, extension,
    member, nothing, project, singleton, universe,
)
from .models import ModelPresentation, embed

from settings import Settings
SETTINGS = Settings.get_settings()
logger = logging.getLogger(f"{SETTINGS.LOGGER_NAME}.checker")


@dataclass(frozen=True)
class SetEnv:
    """Assignment of regular sets to X and Y1..Ym, every Y_l inside X.

    Attributes:
    - n (int): Number of functions of the language
    - bindings (tuple): (set variable, RegularSet) pairs, X first
    """
    n: int
    bindings: tuple[tuple[str, RegularSet], ...]

    @classmethod
    def build(cls, domain: RegularSet, colorings=()) -> SetEnv:
        """X -> D and Y_l -> D & P_l for the given colorings, in order."""
        bindings = [(DOMAIN_VAR, domain)]
        bindings.extend(
            (predicate_var(l), domain & coloring)
            for l, coloring in enumerate(colorings, start=1)
        )
        return cls(domain.n, tuple(bindings))

    @classmethod
    def for_model(cls, model: ModelPresentation) -> SetEnv:
        colorings = [model.coloring(l) for l in range(1, model.sig.m + 1)]
        return cls.build(embed(model), colorings)

    @property
    def domain(self) -> RegularSet:
        return self.lookup(DOMAIN_VAR)

    def value_key(self, set_var: str):
        """Key of the value of a set variable, None when unbound."""
        for name, regular in self.bindings:
            if name == set_var:
                return regular.key()
        return None

    def lookup(self, set_var: str) -> RegularSet:
        for name, regular in self.bindings:
            if name == set_var:
                return regular
        raise ValidationError(
            ErrorCode.UNBOUND_SET_VARIABLE,
            f"set variable '{set_var}' has no value"
        )


class Evaluator:
    """Compiles formulas into automata. Results are cached per subformula
    and per value of the set variables the subformula reads, so re-running
    with a different coloring only recompiles what depends on it.
    """
    def __init__(self, n: int):
        self.n = n
        self._cache: dict = {}

    def compile(self, formula: SnSFormula, env: SetEnv) -> SyncAutomaton:
        _, set_vars = sns_free_variables(formula)
        key = (formula, tuple(
            (name, env.value_key(name)) for name in sorted(set_vars)
        ))
        automaton = self._cache.get(key)
        if automaton is None:
            automaton = self._cache[key] = self._compile(formula, env)
        return automaton

    def _compile(self, formula: SnSFormula, env: SetEnv) -> SyncAutomaton:
        n = self.n
        match formula:
            case STrue():
                return constant(True, n)
            case SFalse():
                return constant(False, n)
            case SEq(left, right):
                return self._equation(left, right)
            case SMember(term, set_var):
                regular = env.lookup(set_var)
                base, word = term_address(term)
                if base is None:
                    return constant(regular.accepts(word), n)
                return member(base, regular.quotient(word))
            case SNot(body):
                return complement(self.compile(body, env))
            case SAnd(parts):
                result = constant(True, n)
                for part in parts:
                    result = combine('and', result, self.compile(part, env))
                    if _decided(result, False):
                        break
                return result
            case SOr(parts):
                result = constant(False, n)
                for part in parts:
                    result = combine('or', result, self.compile(part, env))
                    if _decided(result, True):
                        break
                return result
            case SXor(l, r):
                return combine('xor', self.compile(l, env), self.compile(r, env))
            case SImplies(l, r):
                return combine(
                    'implies', self.compile(l, env), self.compile(r, env)
                )
            case SIff(l, r):
                return combine('iff', self.compile(l, env), self.compile(r, env))
            case ExistsObj(var, body):
                return _exists(var, self.compile(body, env))
            case ForallObj(var, body):
                inner = complement(self.compile(body, env))
                return complement(_exists(var, inner))
            case ExistsSet(var, _) | ForallSet(var, _):
                raise ValidationError(
                    ErrorCode.SECOND_ORDER_QUANTIFIER,
                    f"quantifier over set variable '{var}' cannot be compiled"
                )
        raise TypeError(f"not an S(2n+1)S formula: {formula!r}")

    def _equation(self, left: SnSTerm, right: SnSTerm) -> SyncAutomaton:
        """x.u = y.v, reduced to an extension, singleton or constant."""
        n = self.n
        (x, u), (y, v) = term_address(left), term_address(right)
        if x is None and y is None:
            return constant(u == v, n)
        if x is None:
            (x, u), (y, v) = (y, v), (x, u)
        if y is None:
            if v[len(v) - len(u):] == u and len(v) >= len(u):
                return singleton(x, v[:len(v) - len(u)], n)
            return nothing((x,), n)

        while u and v and u[-1] == v[-1]:
            u, v = u[:-1], v[:-1]
        if u and v:
            return constant(False, n)
        if x == y:
            return universe((x,), n) if not (u or v) else nothing((x,), n)
        if not u:
            return extension(y, x, v, n)
        return extension(x, y, u, n)


def _decided(automaton: SyncAutomaton, value: bool) -> bool:
    """A closed result that no further part can change."""
    return not automaton.tracks and automaton.truth() is value


def _exists(var: str, automaton: SyncAutomaton) -> SyncAutomaton:
    # The universe of addresses is nonempty, so a vacuous quantifier drops
    if var not in automaton.tracks:
        return automaton
    return project(automaton, var)


def eval_fo(
    formula: SnSFormula,
    env: SetEnv,
    evaluator: Evaluator | None = None,
) -> SyncAutomaton:
    """Automaton of the relation a first-order formula defines on its free
    object variables; a boolean (no tracks) for closed formulas.

    Raises:
    - ValidationError: UNBOUND_SET_VARIABLE or SECOND_ORDER_QUANTIFIER
    """
    evaluator = evaluator or Evaluator(env.n)
    return evaluator.compile(formula, env)


def check_domain(
    domain: RegularSet,
    sig: Signature,
    evaluator: Evaluator | None = None,
) -> bool:
    """Does D satisfy domain(X) for the language sig."""
    assert domain.n == sig.n, "D is over another alphabet"
    env = SetEnv.build(domain)
    return eval_fo(build_domain(sig), env, evaluator).truth()


def sentence_mod(formula: Formula, sig: Signature) -> SnSFormula:
    """Mod_F' for F' = normalize(flatten(F)), F closed and over sig."""
    validate(formula, sig, require_closed=True)
    return build_mod(simplify(formula), sig)


def eval_sentence(model: ModelPresentation, formula: Formula) -> bool:
    """Truth of a closed first-order formula in a presented model.

    Args:
    - model (ModelPresentation): The model
    - formula (Formula): Closed formula over the model's signature

    Returns:
    - bool: Mod_F'(D, P_1, ..., P_m)
    """
    mod = sentence_mod(formula, model.sig)
    return eval_fo(mod, SetEnv.for_model(model)).truth()


def dump_environment(env: SetEnv, sentence: SyncAutomaton | None = None):
    """Logs the automata of the assignment (and a compiled sentence)."""
    for name, regular in env.bindings:
        logger.info(f"Automaton for {name}:\n{regular.to_frame().to_string()}")
    if sentence is not None:
        logger.info(f"Sentence automaton:\n{sentence.to_frame().to_string()}")
