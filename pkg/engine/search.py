"""
Bounded search for models of CET plus a first-order sentence.

Presentations are enumerated smallest first: the component multiset, then
the colorings of the occurring predicates as unions of cells. A cell groups
the addresses of D that the embedding acceptor sends to the same state and
that agree on min(length, l) and on length modulo lcm(1..l). The search is
one-sided: finding nothing only means nothing exists inside the bounds.

Before automata are compiled for a coloring, the formula is evaluated on a
finite part of the model; colorings it refutes there are skipped.
"""
from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import asdict, dataclass, fields, replace
from enum import Enum

from logic.completion import program_definitions
from logic.errors import ErrorCode, ValidationError
from logic.syntax import (
    And, Formula, Not, Program, Query, Signature, format_formula,
    query_formula, validate,
)
from reduction.sns import predicate_var, sns_free_variables
from .automata import RegularSet
from .checker import (
    Evaluator, SetEnv, check_domain, dump_environment, eval_sentence,
    sentence_mod,
)
from .models import (
    Component, ModelPresentation, NonRoot, Root, component_key,
    canonical_component, dump_model, embed, embedding_transitions,
    load_model, model_to_dict,
)
from .sampling import SampledStructure

from settings import BOUNDS_SETTINGS, Settings
SETTINGS = Settings.get_settings()
logger = logging.getLogger(f"{SETTINGS.LOGGER_NAME}.search")


@dataclass(frozen=True)
class Bounds:
    """Limits of the presentation search.

    Attributes:
    - max_roots (int): Extra unnamed root components
    - max_nonroots (int): Extra non-root components, copies included
    - max_prefix (int): Prefix length of a non-root signature
    - max_period (int): Period length of a non-root signature
    - max_multiplicity (int): Copies of the same non-root component
    - granularity (int): Depth l at which coloring cells stop splitting
    - budget_seconds (float): Wall-clock budget of one search
    """
    max_roots: int = BOUNDS_SETTINGS['max_roots']
    max_nonroots: int = BOUNDS_SETTINGS['max_nonroots']
    max_prefix: int = BOUNDS_SETTINGS['max_prefix']
    max_period: int = BOUNDS_SETTINGS['max_period']
    max_multiplicity: int = BOUNDS_SETTINGS['max_multiplicity']
    granularity: int = BOUNDS_SETTINGS['granularity']
    budget_seconds: float = BOUNDS_SETTINGS['budget_seconds']

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 0:
                raise ValidationError(
                    ErrorCode.INVALID_BOUNDS,
                    f"bound '{f.name}' must be nonnegative"
                )

    def override(self, **values) -> Bounds:
        """Copy with the given fields replaced; None keeps the current value."""
        return replace(
            self, **{k: v for k, v in values.items() if v is not None}
        )

    def to_dict(self) -> dict:
        return asdict(self)


class VerdictKind(Enum):
    SAT = 'SAT'
    NO_MODEL_WITHIN_BOUNDS = 'NO_MODEL_WITHIN_BOUNDS'


@dataclass(frozen=True)
class Verdict:
    """Outcome of one search. Only SAT carries a witness.

    Attributes:
    - kind (VerdictKind): SAT or NO_MODEL_WITHIN_BOUNDS
    - bounds (Bounds): The bounds searched
    - witness (ModelPresentation): First model found, if any
    - presentations (int): Component multisets visited
    - candidates (int): Colorings evaluated
    - elapsed (float): Seconds spent
    - budget_exhausted (bool): The search stopped on the time budget
    - frontier (str): Last multiset visited when the budget ran out
    """
    kind: VerdictKind
    bounds: Bounds
    witness: ModelPresentation | None = None
    presentations: int = 0
    candidates: int = 0
    elapsed: float = 0.0
    budget_exhausted: bool = False
    frontier: str | None = None

    @property
    def sat(self) -> bool:
        return self.kind is VerdictKind.SAT

    def to_dict(self, timing: bool = True) -> dict:
        document = {
            'verdict': self.kind.value,
            'witness': model_to_dict(self.witness) if self.witness else None,
            'bounds': self.bounds.to_dict(),
            'presentations': self.presentations,
            'candidates': self.candidates,
            'budget_exhausted': self.budget_exhausted,
            'frontier': self.frontier,
        }
        if timing:
            document['elapsed_seconds'] = round(self.elapsed, 3)
        return document

    def to_text(self, timing: bool = True) -> str:
        lines = [f"verdict: {self.kind.value}"]
        summary = f"{self.presentations} presentation(s), " \
            f"{self.candidates} candidate(s)"
        if timing:
            summary += f" in {self.elapsed:.2f}s"
        lines.append(summary)
        if self.budget_exhausted:
            lines.append(f"budget exhausted at [{self.frontier}]")
        if self.witness is not None:
            lines.append(f"witness: {describe(self.witness)}")
            colorings = model_to_dict(self.witness)['predicates']
            lines.extend(
                f"  {name}: {expression}"
                for name, expression in colorings.items()
            )
        return '\n'.join(lines)


# ---------- Enumeration ----------

def nonroot_components(n: int, bounds: Bounds) -> list[NonRoot]:
    """Distinct canonical non-root signatures within the length bounds."""
    if n == 0:
        return []
    found = set()
    functions = range(1, n + 1)
    for prefix_length in range(bounds.max_prefix + 1):
        for period_length in range(1, bounds.max_period + 1):
            for prefix in itertools.product(functions, repeat=prefix_length):
                for period in itertools.product(functions, repeat=period_length):
                    found.add(canonical_component(NonRoot(prefix, period)))
    return sorted(found, key=component_key)


def _size_key(extra: tuple[Component, ...]) -> tuple:
    lengths = sum(
        len(c.prefix) + len(c.period) for c in extra if isinstance(c, NonRoot)
    )
    return len(extra), lengths, tuple(component_key(c) for c in extra)


def enumerate_presentations(
    sig: Signature,
    bounds: Bounds,
) -> list[ModelPresentation]:
    """Uncolored presentations within the bounds, smallest first.

    Args:
    - sig (Signature): The language
    - bounds (Bounds): Limits on the extra components

    Returns:
    - list[ModelPresentation]: Ordered by number of extra components, then
        total signature length, then lexicographically
    """
    nonroots = nonroot_components(sig.n, bounds)
    multisets = []
    for roots in range(bounds.max_roots + 1):
        for total in range(bounds.max_nonroots + 1):
            for combo in itertools.combinations_with_replacement(nonroots, total):
                if any(combo.count(c) > bounds.max_multiplicity for c in combo):
                    continue
                extra = (Root(),) * roots + combo
                if sig.k + len(extra) > 0:
                    multisets.append(extra)
    multisets.sort(key=_size_key)
    return [ModelPresentation(sig, extra) for extra in multisets]


def coloring_cells(model: ModelPresentation, granularity: int):
    """The cells colorings of this presentation are built from.

    Returns:
    - tuple: (transitions, initial, cells); the transitions classify every
        address by (acceptor state, min(length, l), length mod lcm(1..l)),
        cells lists the classes inside D in discovery order
    """
    transitions, initial, accepting = embedding_transitions(model)
    modulus = math.lcm(*range(1, granularity + 1))

    start = (initial, 0, 0)
    classifier: dict[tuple, dict[int, tuple]] = {}
    order, seen = [start], {start}
    i = 0
    while i < len(order):
        state, depth, residue = order[i]
        moves = {}
        for letter, target in transitions.get(state, {}).items():
            following = (target, min(depth + 1, granularity),
                         (residue + 1) % modulus)
            moves[letter] = following
            if following not in seen:
                seen.add(following)
                order.append(following)
        classifier[order[i]] = moves
        i += 1

    cells = [cell for cell in order if cell[0] in accepting]
    return classifier, start, cells


def cell_lookup(classifier: dict, initial: tuple, cells: list):
    """Index into cells of the class of an address of D, remembered per
    address.
    """
    index = {cell: c for c, cell in enumerate(cells)}
    known: dict[tuple[int, ...], int] = {}

    def cell_of(address: tuple[int, ...]) -> int:
        c = known.get(address)
        if c is None:
            state = initial
            for letter in address:
                state = classifier[state][letter]
            c = known[address] = index[state]
        return c

    return cell_of


def describe(model: ModelPresentation) -> str:
    """One-line summary of a multiset, e.g. '1 named, root, nonroot(f|f)'."""
    sig = model.sig
    parts = [f"{sig.k} named"]
    for component in model.extra:
        match component:
            case Root():
                parts.append('root')
            case NonRoot(prefix, period):
                before = ' '.join(sig.functions[h - 1] for h in prefix)
                after = ' '.join(sig.functions[h - 1] for h in period)
                parts.append(f"nonroot({before}|{after})")
    return ', '.join(parts)


# ---------- Search ----------

def _verify(witness: ModelPresentation, formula: Formula):
    """Re-reads the witness from its model file and evaluates it again."""
    reloaded = load_model(dump_model(witness))
    assert all(
        reloaded.coloring(l) == witness.coloring(l)
        for l in range(1, witness.sig.m + 1)
    ), "witness colorings do not survive their regular expressions"
    assert check_domain(embed(reloaded), reloaded.sig), \
        "witness domain violates domain(X)"
    assert eval_sentence(reloaded, formula), "witness does not satisfy F"


def solve(
    formula: Formula,
    sig: Signature,
    bounds: Bounds | None = None,
    dump: bool = False,
) -> Verdict:
    """First presentation within the bounds whose structure satisfies
    CET plus the closed formula F.

    Args:
    - formula (Formula): Closed formula over sig
    - sig (Signature): The language
    - bounds (Bounds, optional): Search limits, defaults from the settings
    - dump (bool): Log the automata of the witness (or of nothing if none)

    Returns:
    - Verdict: SAT with the witness, or NO_MODEL_WITHIN_BOUNDS
    """
    bounds = bounds or Bounds()
    validate(formula, sig, require_closed=True)
    mod = sentence_mod(formula, sig)
    _, set_vars = sns_free_variables(mod)
    occurring = [
        l for l in range(1, sig.m + 1) if predicate_var(l) in set_vars
    ]

    start = time.perf_counter()
    candidates = 0
    decided = 0
    presentations = enumerate_presentations(sig, bounds)
    logger.info(
        f"Searching {len(presentations)} component multiset(s), "
        f"{len(occurring)} predicate(s) to color"
    )

    def stop(visited: int, frontier: str) -> Verdict:
        logger.warning(
            f"Budget of {bounds.budget_seconds}s exhausted at [{frontier}]"
        )
        return Verdict(
            VerdictKind.NO_MODEL_WITHIN_BOUNDS, bounds,
            presentations=visited, candidates=candidates,
            elapsed=time.perf_counter() - start,
            budget_exhausted=True, frontier=frontier,
        )

    for visited, model in enumerate(presentations, start=1):
        frontier = describe(model)
        if time.perf_counter() - start > bounds.budget_seconds:
            return stop(visited - 1, frontier)

        domain = embed(model)
        evaluator = Evaluator(sig.n)
        assert check_domain(domain, sig, evaluator), \
            f"embedded presentation [{frontier}] violates domain(X)"

        classifier, initial, cells = coloring_cells(model, bounds.granularity)
        cell_of = cell_lookup(classifier, initial, cells)
        sampled = SampledStructure.of(model, domain)
        choices = [(l, c) for l in occurring for c in range(len(cells))]
        built: dict[frozenset, RegularSet] = {}

        def coloring(selected: frozenset) -> RegularSet:
            if selected not in built:
                built[selected] = RegularSet.from_transitions(
                    sig.n, classifier, initial, {cells[c] for c in selected}
                )
            return built[selected]
        logger.debug(
            f"Presentation [{frontier}]: {len(cells)} cell(s), "
            f"{2 ** len(choices)} coloring(s)"
        )

        for size in range(len(choices) + 1):
            for chosen in itertools.combinations(choices, size):
                if time.perf_counter() - start > bounds.budget_seconds:
                    return stop(visited, frontier)
                candidates += 1
                selected = [
                    frozenset(c for (p, c) in chosen if p == l)
                    for l in range(1, sig.m + 1)
                ]
                # A definite value on the sample is the value in the model
                if sampled.evaluate(
                    formula, lambda l, address: cell_of(address) in selected[l - 1]
                ) is False:
                    decided += 1
                    continue
                colorings = [coloring(chosen_cells) for chosen_cells in selected]
                env = SetEnv.build(domain, colorings)
                if not evaluator.compile(mod, env).truth():
                    continue

                witness = model.with_colorings(colorings)
                _verify(witness, formula)
                elapsed = time.perf_counter() - start
                logger.info(
                    f"Witness [{frontier}] after {candidates} candidate(s), "
                    f"{decided} refuted on the sample, in {elapsed:.2f}s"
                )
                if dump:
                    dump_environment(env, evaluator.compile(mod, env))
                return Verdict(
                    VerdictKind.SAT, bounds, witness=witness,
                    presentations=visited, candidates=candidates,
                    elapsed=elapsed,
                )

    elapsed = time.perf_counter() - start
    logger.info(
        f"No model within bounds after {candidates} candidate(s), "
        f"{decided} refuted on the sample"
    )
    return Verdict(
        VerdictKind.NO_MODEL_WITHIN_BOUNDS, bounds,
        presentations=len(presentations), candidates=candidates,
        elapsed=elapsed,
    )


# ---------- Entailment ----------

@dataclass(frozen=True)
class DirectionReport:
    """One direction of an entailment question.

    Attributes:
    - claim (str): The entailment a countermodel would refute
    - verdict (Verdict): Search for comp(P) plus the negated claim
    """
    claim: str
    verdict: Verdict

    @property
    def outcome(self) -> str:
        if self.verdict.sat:
            return 'countermodel found'
        if self.verdict.budget_exhausted:
            return 'no countermodel before the budget ran out'
        return 'no countermodel within bounds'

    def to_dict(self, timing: bool = True) -> dict:
        return {
            'claim': self.claim,
            'outcome': self.outcome,
            **self.verdict.to_dict(timing),
        }


@dataclass(frozen=True)
class EntailmentReport:
    query: str
    positive: DirectionReport
    negative: DirectionReport

    def to_dict(self, timing: bool = True) -> dict:
        return {
            'query': self.query,
            'directions': [
                self.positive.to_dict(timing), self.negative.to_dict(timing)
            ],
        }

    def to_text(self, timing: bool = True) -> str:
        lines = [f"query: {self.query}"]
        for report in (self.positive, self.negative):
            lines.append(f"{report.claim}: {report.outcome}")
            lines.extend(
                f"  {line}"
                for line in report.verdict.to_text(timing).splitlines()
            )
        return '\n'.join(lines)


def entail(
    program: Program,
    query: Query,
    sig: Signature,
    bounds: Bounds | None = None,
) -> EntailmentReport:
    """Looks for countermodels of comp(P) |= Q and of comp(P) |= ~Q.

    Args:
    - program (Program): The program P
    - query (Query): The query Q, read existentially
    - sig (Signature): The language L
    - bounds (Bounds, optional): Search limits for each direction

    Returns:
    - EntailmentReport: Verdicts of both searches
    """
    bounds = bounds or Bounds()
    validate(program, sig)
    validate(query, sig)
    definitions = program_definitions(program, sig)
    question = query_formula(query)
    text = format_formula(question)

    logger.info(f"Countermodel search for comp(P) |= {text}")
    positive = solve(And(definitions, Not(question)), sig, bounds)
    logger.info(f"Countermodel search for comp(P) |= ~({text})")
    negative = solve(And(definitions, question), sig, bounds)
    return EntailmentReport(
        text,
        DirectionReport(f"comp(P) |= {text}", positive),
        DirectionReport(f"comp(P) |= ~({text})", negative),
    )
