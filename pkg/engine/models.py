"""
Finite presentations of countable models of CET and their embedding into
the tree of addresses.

A model is a disjoint union of components. The j-th component lives below
address 0^j: a root component is a copy of the term structure (addresses
0^j . {1..n}*), a non-root component has an infinite spine of predecessors
whose signature h_1 h_2 ... is a prefix followed by a repeated period. The
spine element a_i sits at 0^j . b(h_1) ... b(h_i), and every f_g image that
does not lead back along the spine opens a full subtree.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Union

from logic.errors import ErrorCode, ParseError, ValidationError
from logic.syntax import Signature
from .automata import Address, RegularSet
from .regex import regular_set, regex_text

from settings import Settings
SETTINGS = Settings.get_settings()
logger = logging.getLogger(f"{SETTINGS.LOGGER_NAME}.models")


@dataclass(frozen=True, order=True)
class Root:
    pass


@dataclass(frozen=True, order=True)
class NonRoot:
    """Non-root component with signature prefix . period . period ...

    Attributes:
    - prefix (tuple[int]): Function indices h_1..h_p
    - period (tuple[int]): Nonempty, repeated forever after the prefix
    """
    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValidationError(
                ErrorCode.INVALID_MODEL, "a non-root signature needs a period"
            )

    def letter(self, i: int) -> int:
        """h_i, 1-based."""
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.period[(i - len(self.prefix) - 1) % len(self.period)]


Component = Union[Root, NonRoot]


def component_key(component: Component) -> tuple:
    """Canonical order: roots first, then non-roots by (prefix, period)."""
    match component:
        case Root():
            return (0, (), ())
        case NonRoot(prefix, period):
            return (1, prefix, period)


def _primitive(period: tuple[int, ...]) -> tuple[int, ...]:
    size = len(period)
    for d in range(1, size + 1):
        if size % d == 0 and period[:d] * (size // d) == period:
            return period[:d]
    return period


def canonical_component(component: Component) -> Component:
    """Shortest description of the same signature: primitive period and the
    prefix shortened as far as the period can absorb it.
    """
    if isinstance(component, Root):
        return component
    prefix, period = component.prefix, _primitive(component.period)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1:] + period[:-1]
    return NonRoot(prefix, period)


def iso_nonroot(first: NonRoot, second: NonRoot) -> bool:
    """True if the two signatures share a tail, i.e. the primitive roots of
    their periods are rotations of each other.
    """
    a = canonical_component(first).period
    b = canonical_component(second).period
    return len(a) == len(b) and any(
        a == b[i:] + b[:i] for i in range(len(b))
    )


@dataclass(frozen=True)
class ModelPresentation:
    """Finite description of a countable CET model.

    Attributes:
    - sig (Signature): The language
    - extra (tuple[Component]): Unnamed components in canonical order, one
        entry per copy; the k named roots are implicit
    - colorings (tuple[RegularSet]): P_l for each predicate, inside D
    """
    sig: Signature
    extra: tuple[Component, ...] = ()
    colorings: tuple[RegularSet, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.sig.n
        if self.sig.k + len(self.extra) == 0:
            raise ValidationError(
                ErrorCode.INVALID_MODEL, "the model needs at least one component"
            )
        for component in self.extra:
            if isinstance(component, NonRoot):
                if n == 0:
                    raise ValidationError(
                        ErrorCode.INVALID_MODEL,
                        "non-root components need at least one function"
                    )
                if any(not 1 <= h <= n
                       for h in component.prefix + component.period):
                    raise ValidationError(
                        ErrorCode.INVALID_MODEL,
                        f"signature {component} uses an unknown function"
                    )
        if list(self.extra) != sorted(self.extra, key=component_key):
            object.__setattr__(
                self, 'extra', tuple(sorted(self.extra, key=component_key))
            )
        if len(self.colorings) not in (0, self.sig.m):
            raise ValidationError(
                ErrorCode.INVALID_MODEL, "one coloring per predicate expected"
            )

    @property
    def components(self) -> tuple[Component, ...]:
        """All components, component j (1-based) below address 0^j."""
        return tuple(Root() for _ in range(self.sig.k)) + self.extra

    def coloring(self, index: int) -> RegularSet:
        """P_l for the 1-based predicate index l (empty if uncolored)."""
        if not self.colorings:
            return RegularSet.empty(self.sig.n)
        return self.colorings[index - 1]

    def with_colorings(self, colorings) -> ModelPresentation:
        domain = embed(self)
        return ModelPresentation(
            self.sig, self.extra,
            tuple(domain & coloring for coloring in colorings),
        )

    def multiset(self) -> list[tuple[Component, int]]:
        counts: dict[Component, int] = {}
        for component in self.extra:
            counts[component] = counts.get(component, 0) + 1
        return list(counts.items())


# ---------- Embedding ----------

def embedding_transitions(model: ModelPresentation):
    """Acceptor of D with one group of states per component.

    Returns:
    - tuple: (transitions, initial, accepting), transitions mapping each
        state to {letter: state}; states are ('start',), ('head', j),
        ('spine', j, i) and ('forest', j)
    """
    n = model.sig.n
    functions = range(1, n + 1)
    components = model.components
    transitions: dict[tuple, dict[int, tuple]] = {('start',): {}}
    accepting = set()

    if components:
        transitions[('start',)][0] = ('head', 1)

    for j, component in enumerate(components, start=1):
        head, forest = ('head', j), ('forest', j)
        moves: dict[int, tuple] = {}
        if j < len(components):
            moves[0] = ('head', j + 1)
        for g in functions:
            moves[g] = forest
        transitions[forest] = {g: forest for g in functions}
        accepting |= {head, forest}

        if isinstance(component, NonRoot):
            moves[-component.letter(1)] = ('spine', j, 1)
            last = len(component.prefix) + len(component.period)
            for i in range(1, last + 1):
                # Position last + 1 behaves exactly like position prefix + 1
                following = i + 1 if i < last else len(component.prefix) + 1
                spine = ('spine', j, i)
                transitions[spine] = {
                    g: forest for g in functions if g != component.letter(i)
                }
                transitions[spine][-component.letter(i + 1)] = \
                    ('spine', j, following)
                accepting.add(spine)
        transitions[head] = moves

    return transitions, ('start',), accepting


def embed(model: ModelPresentation) -> RegularSet:
    """The regular set D of addresses presenting the model's domain."""
    transitions, initial, accepting = embedding_transitions(model)
    domain = RegularSet.from_transitions(
        model.sig.n, transitions, initial, accepting
    )
    logger.debug(
        f"Embedded {len(model.components)} component(s) into "
        f"{domain.dfa.num_states} states"
    )
    return domain


def constant_address(j: int) -> Address:
    """Address 0^j of the j-th constant."""
    return (0,) * j


def induced_fn(domain: RegularSet, i: int, address: Address) -> Address:
    """Image of an address under the function f_i of the presented model.

    Args:
    - domain (RegularSet): D
    - i (int): 1-based function index
    - address (Address): Member of D

    Returns:
    - Address: address.i if that is in D, otherwise address without its
        trailing letter b_i

    Raises:
    - ValidationError: UNDEFINED_IMAGE when the address is not in D or
        neither case applies
    """
    if not domain.accepts(address):
        raise ValidationError(
            ErrorCode.UNDEFINED_IMAGE, f"address {address} is not in D"
        )
    forward = address + (i,)
    if domain.accepts(forward):
        return forward
    if address and address[-1] == -i:
        return address[:-1]
    raise ValidationError(
        ErrorCode.UNDEFINED_IMAGE,
        f"f_{i} has no image at {address}; D violates domain(X)"
    )


def predecessor(domain: RegularSet, address: Address) -> tuple[int, Address] | None:
    """The unique (i, u) with f_i(u) = address, None for root elements."""
    candidates = []
    if address and address[-1] > 0:
        candidates.append((address[-1], address[:-1]))
    for i in range(1, domain.n + 1):
        candidates.append((i, address + (-i,)))

    for i, candidate in candidates:
        if not domain.accepts(candidate):
            continue
        try:
            if induced_fn(domain, i, candidate) == address:
                return i, candidate
        except ValidationError:
            continue
    return None


# ---------- Model files ----------

def _names(indices, sig: Signature) -> list[str]:
    return [sig.functions[i - 1] for i in indices]


def _indices(names, sig: Signature) -> tuple[int, ...]:
    try:
        return tuple(sig.function_index(name) for name in names)
    except ValueError as e:
        raise ValidationError(
            ErrorCode.INVALID_MODEL, f"unknown function in {names}"
        ) from e


def model_to_dict(model: ModelPresentation) -> dict:
    """Canonical document: signature, extra_components, predicates."""
    sig = model.sig
    components = []
    for component, count in model.multiset():
        match component:
            case Root():
                components.extend({'type': 'root'} for _ in range(count))
            case NonRoot(prefix, period):
                components.append({
                    'type': 'nonroot',
                    'prefix': _names(prefix, sig),
                    'period': _names(period, sig),
                    'count': count,
                })
    predicates = {
        name: regex_text(model.coloring(l))
        for l, name in enumerate(sig.predicates, start=1)
    }
    return {
        'signature': sig.to_dict(),
        'extra_components': components,
        'predicates': predicates,
    }


def model_from_dict(data: dict) -> ModelPresentation:
    """Reads the document written by model_to_dict; colorings are
    intersected with D, missing predicates are uncolored.
    """
    try:
        sig = Signature.from_dict(data['signature'])
        extra = []
        for entry in data.get('extra_components', []):
            count = int(entry.get('count', 1))
            if count < 1:
                raise ValidationError(
                    ErrorCode.INVALID_MODEL, "component counts must be positive"
                )
            match entry['type']:
                case 'root':
                    extra.extend(Root() for _ in range(count))
                case 'nonroot':
                    component = NonRoot(
                        _indices(entry.get('prefix', []), sig),
                        _indices(entry['period'], sig),
                    )
                    extra.extend(component for _ in range(count))
                case other:
                    raise ValidationError(
                        ErrorCode.INVALID_MODEL,
                        f"unknown component type '{other}'"
                    )
        expressions = data.get('predicates', {})
    except (KeyError, TypeError, AttributeError) as e:
        raise ValidationError(
            ErrorCode.INVALID_MODEL, f"malformed model document: {e}"
        ) from e

    unknown = set(expressions) - set(sig.predicates)
    if unknown:
        raise ValidationError(
            ErrorCode.INVALID_MODEL,
            f"predicates not in the signature: {', '.join(sorted(unknown))}"
        )

    model = ModelPresentation(sig, tuple(extra))
    colorings = [
        regular_set(expressions[name], sig.n) if name in expressions
        else RegularSet.empty(sig.n)
        for name in sig.predicates
    ]
    return model.with_colorings(colorings)


def load_model(text: str) -> ModelPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"model file is not valid JSON: {e.msg}", e.lineno, e.colno
        ) from e
    return model_from_dict(data)


def dump_model(model: ModelPresentation) -> str:
    return json.dumps(model_to_dict(model), indent=2)
