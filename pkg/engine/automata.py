"""
Finite automata over addresses and over convolutions of addresses.

A `Dfa` is a complete deterministic automaton kept as a numpy transition
table (rows are states, columns are symbols, state 0 is initial). After
`minimize` the table is canonical: unreachable states are gone, equivalent
states merged and states numbered in breadth-first order, so two minimal
automata accept the same language exactly when their arrays are equal.

Addresses are tuples of letters (0 for f_0, i for f_i, -i for f_i^-1). A
`RegularSet` is a Dfa over the 2n+1 letters, the digit of letter i > 0 is i
and that of -i is n + i. A `SyncAutomaton` reads k addresses in parallel:
every symbol is a k-tuple of digits from 0..2n+1, where 2n+1 is the padding
digit that ends a track. Symbols are mixed radix encoded, the first track
being the most significant digit.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Hashable, Iterable

import numpy as np
import pandas as pd

from logic.errors import ErrorCode, ValidationError
from reduction.sns import letters

Address = tuple[int, ...]


def letter_digit(letter: int, n: int) -> int:
    return letter if letter >= 0 else n - letter


def digit_letter(digit: int, n: int) -> int:
    return digit if digit <= n else n - digit


def letter_label(letter: int) -> str:
    """'0', '1'.. for f_0, f_1.. and 'b1'.. for the inverses."""
    return f"b{-letter}" if letter < 0 else str(letter)


def format_address(address: Address) -> str:
    return ' '.join(letter_label(letter) for letter in address) or '()'


# ---------- Deterministic automata ----------

@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete deterministic automaton with initial state 0.

    Attributes:
    - table (np.ndarray): (states, symbols) array of successor states
    - accepting (np.ndarray): (states,) boolean mask
    """
    table: np.ndarray
    accepting: np.ndarray

    @property
    def num_states(self) -> int:
        return self.table.shape[0]

    @property
    def num_symbols(self) -> int:
        return self.table.shape[1]

    def run(self, symbols: Iterable[int], state: int = 0) -> int:
        for symbol in symbols:
            state = int(self.table[state, symbol])
        return state

    def reachable(self) -> np.ndarray:
        seen = np.zeros(self.num_states, dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while frontier.size:
            targets = np.unique(self.table[frontier])
            frontier = targets[~seen[targets]]
            seen[frontier] = True
        return seen

    def coreachable(self) -> np.ndarray:
        """States from which some accepting state can be reached."""
        live = self.accepting.copy()
        while True:
            grown = live | live[self.table].any(axis=1)
            if np.array_equal(grown, live):
                return live
            live = grown

    def is_empty(self) -> bool:
        return not self.accepting[self.reachable()].any()

    def complement(self) -> Dfa:
        return Dfa(self.table, ~self.accepting)

    def product(
        self,
        other: Dfa,
        combine: Callable[[np.ndarray, np.ndarray], np.ndarray],
    ) -> Dfa:
        """Synchronous product, acceptance decided by `combine`."""
        assert self.num_symbols == other.num_symbols, "Alphabets differ"
        size = other.num_states
        table = self.table[:, None, :] * size + other.table[None, :, :]
        accepting = combine(self.accepting[:, None], other.accepting[None, :])
        return Dfa(
            table.reshape(-1, self.num_symbols), accepting.reshape(-1)
        ).minimize()

    def minimize(self) -> Dfa:
        """Moore partition refinement followed by canonical numbering."""
        keep = np.flatnonzero(self.reachable())
        remap = np.full(self.num_states, -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        table = remap[self.table[keep]]
        accepting = self.accepting[keep]

        classes = accepting.astype(np.int64)
        count = len(np.unique(classes))
        while True:
            signature = np.column_stack([classes, classes[table]])
            _, refined = np.unique(signature, axis=0, return_inverse=True)
            refined = refined.reshape(-1)
            refined_count = int(refined.max()) + 1
            if refined_count == count:
                break
            classes, count = refined, refined_count

        _, representatives = np.unique(refined, return_index=True)
        return _renumber(
            refined[table[representatives]],
            accepting[representatives],
            int(refined[0]),
        )

    def equivalent(self, other: Dfa) -> bool:
        mine, theirs = self.minimize(), other.minimize()
        return mine.table.shape == theirs.table.shape \
            and np.array_equal(mine.table, theirs.table) \
            and np.array_equal(mine.accepting, theirs.accepting)

    def key(self) -> Hashable:
        return self.table.shape, self.table.tobytes(), self.accepting.tobytes()

    def to_frame(self, labels: list[str] | None = None) -> pd.DataFrame:
        """Transition table as a DataFrame, one row per state."""
        frame = pd.DataFrame(
            self.table,
            columns=labels if labels is not None else range(self.num_symbols),
        )
        frame['accepting'] = self.accepting
        frame.index.name = 'state'
        return frame


def _renumber(table: np.ndarray, accepting: np.ndarray, initial: int) -> Dfa:
    """Breadth-first numbering from `initial`, symbols in increasing order."""
    position = np.full(table.shape[0], -1, dtype=np.int64)
    position[initial] = 0
    order = [initial]
    frontier = np.array([initial])
    while frontier.size:
        targets = table[frontier].ravel()
        _, first = np.unique(targets, return_index=True)
        candidates = targets[np.sort(first)]
        new = candidates[position[candidates] < 0]
        position[new] = np.arange(len(order), len(order) + len(new))
        order.extend(new.tolist())
        frontier = new
    order = np.array(order)
    return Dfa(position[table[order]], accepting[order])


def crawl(
    initial: Hashable,
    num_symbols: int,
    follow: Callable[[Hashable, int], Hashable],
    final: Callable[[Hashable], bool],
) -> Dfa:
    """Explores the states reachable from `initial` and interns them.

    Args:
    - initial (Hashable): Start state
    - num_symbols (int): Size of the alphabet
    - follow (Callable): Successor of a state on a symbol
    - final (Callable): Acceptance of a state

    Returns:
    - Dfa: Minimised automaton over the discovered states
    """
    states = [initial]
    index = {initial: 0}
    rows = []
    i = 0
    while i < len(states):
        row = []
        for symbol in range(num_symbols):
            target = follow(states[i], symbol)
            j = index.get(target)
            if j is None:
                j = index[target] = len(states)
                states.append(target)
            row.append(j)
        rows.append(row)
        i += 1
    accepting = np.array([final(state) for state in states], dtype=bool)
    return Dfa(np.array(rows, dtype=np.int64), accepting).minimize()


# ---------- Regular sets of addresses ----------

@dataclass(frozen=True, eq=False)
class RegularSet:
    """A regular set of addresses over the letters of n functions. Equality
    is language equality.
    """
    n: int
    dfa: Dfa

    def __post_init__(self):
        assert self.dfa.num_symbols == 2 * self.n + 1, \
            "Alphabet does not match the number of functions"

    @classmethod
    def of(cls, n: int, dfa: Dfa) -> RegularSet:
        return cls(n, dfa.minimize())

    @classmethod
    def from_transitions(
        cls,
        n: int,
        transitions: dict[Hashable, dict[int, Hashable]],
        initial: Hashable,
        accepting: set,
    ) -> RegularSet:
        """Builds the set from a partial transition map over letters; missing
        transitions go to a rejecting sink.
        """
        index = {initial: 0}
        order = [initial]
        i = 0
        while i < len(order):
            for target in transitions.get(order[i], {}).values():
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
            i += 1

        sink = len(order)
        table = np.full((sink + 1, 2 * n + 1), sink, dtype=np.int64)
        for state in order:
            for letter, target in transitions.get(state, {}).items():
                table[index[state], letter_digit(letter, n)] = index[target]
        final = np.array(
            [state in accepting for state in order] + [False], dtype=bool
        )
        return cls.of(n, Dfa(table, final))

    @classmethod
    def empty(cls, n: int) -> RegularSet:
        return cls(n, Dfa(np.zeros((1, 2 * n + 1), dtype=np.int64),
                          np.array([False])))

    @classmethod
    def universe(cls, n: int) -> RegularSet:
        return cls(n, Dfa(np.zeros((1, 2 * n + 1), dtype=np.int64),
                          np.array([True])))

    @classmethod
    def from_words(cls, n: int, words: Iterable[Address]) -> RegularSet:
        transitions: dict[Address, dict[int, Address]] = {}
        accepting = set()
        for word in words:
            for i, letter in enumerate(word):
                transitions.setdefault(word[:i], {})[letter] = word[:i + 1]
            accepting.add(tuple(word))
        return cls.from_transitions(n, transitions, (), accepting)

    def accepts(self, word: Address) -> bool:
        state = self.dfa.run(letter_digit(letter, self.n) for letter in word)
        return bool(self.dfa.accepting[state])

    def __contains__(self, word: Address) -> bool:
        return self.accepts(word)

    def is_empty(self) -> bool:
        return self.dfa.is_empty()

    def _combine(self, other: RegularSet, combine) -> RegularSet:
        assert self.n == other.n, "Sets over different alphabets"
        return RegularSet(self.n, self.dfa.product(other.dfa, combine))

    def union(self, other: RegularSet) -> RegularSet:
        return self._combine(other, operator.or_)

    def intersection(self, other: RegularSet) -> RegularSet:
        return self._combine(other, operator.and_)

    def difference(self, other: RegularSet) -> RegularSet:
        return self._combine(other, lambda a, b: a & ~b)

    def complement(self) -> RegularSet:
        return RegularSet(self.n, self.dfa.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other: RegularSet) -> bool:
        return self.difference(other).is_empty()

    def quotient(self, suffix: Address) -> RegularSet:
        """{w : w.suffix in self}"""
        states = np.arange(self.dfa.num_states)
        for letter in suffix:
            states = self.dfa.table[states, letter_digit(letter, self.n)]
        return RegularSet.of(
            self.n, Dfa(self.dfa.table, self.dfa.accepting[states])
        )

    def sample(self, max_length: int) -> list[Address]:
        """All members up to a length, shortest first, letters in
        canonical order within a length.
        """
        table, accepting = self.dfa.table, self.dfa.accepting
        live = self.dfa.coreachable()
        members: list[Address] = []
        layer: list[tuple[Address, int]] = [((), 0)] if live[0] else []
        for length in range(max_length + 1):
            successors = []
            for word, state in layer:
                if accepting[state]:
                    members.append(word)
                if length == max_length:
                    continue
                for letter in letters(self.n):
                    target = int(table[state, letter_digit(letter, self.n)])
                    if live[target]:
                        successors.append((word + (letter,), target))
            layer = successors
        return members

    def key(self) -> Hashable:
        return self.n, self.dfa.key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegularSet):
            return NotImplemented
        return self.n == other.n and self.dfa.equivalent(other.dfa)

    def __hash__(self) -> int:
        return hash(self.key())

    def to_frame(self) -> pd.DataFrame:
        labels = [letter_label(letter) for letter in letters(self.n)]
        return self.dfa.to_frame(labels)


# ---------- Synchronous multi-track automata ----------

@lru_cache(maxsize=None)
def _digits(base: int, k: int) -> np.ndarray:
    """(base**k, k) array, row c holding the digits of symbol c."""
    codes = np.arange(base ** k, dtype=np.int64)
    powers = base ** np.arange(k - 1, -1, -1, dtype=np.int64)
    digits = (codes[:, None] // powers[None, :]) % base
    digits.flags.writeable = False
    return digits


def _powers(base: int, k: int) -> np.ndarray:
    return base ** np.arange(k - 1, -1, -1, dtype=np.int64)


@lru_cache(maxsize=None)
def _validity(n: int, k: int) -> Dfa:
    """Valid convolutions of k tracks: a track, once padded, stays padded
    and no symbol pads every track.
    """
    base = 2 * n + 2
    pad = base - 1
    pads = _digits(base, k) == pad
    all_pad = pads.all(axis=1)

    masks = np.arange(2 ** k, dtype=np.int64)
    ended = ((masks[:, None] >> np.arange(k)[None, :]) & 1).astype(bool)
    invalid = all_pad[None, :] \
        | (ended[:, None, :] & ~pads[None, :, :]).any(axis=2)
    pad_bits = (pads * (1 << np.arange(k))).sum(axis=1).astype(np.int64)

    dead = 2 ** k
    table = np.where(invalid, dead, masks[:, None] | pad_bits[None, :])
    table = np.vstack([table, np.full((1, len(all_pad)), dead)])
    accepting = np.ones(dead + 1, dtype=bool)
    accepting[dead] = False
    return Dfa(table.astype(np.int64), accepting).minimize()


@dataclass(frozen=True, eq=False)
class SyncAutomaton:
    """Automaton for a relation between addresses, one track per variable.

    Attributes:
    - tracks (tuple[str]): Sorted variable names, one per track
    - n (int): Number of functions, fixing the 2n+1 letters
    - dfa (Dfa): Minimal automaton over (2n+2)**k symbols that accepts
        valid convolutions only
    """
    tracks: tuple[str, ...]
    n: int
    dfa: Dfa

    @property
    def base(self) -> int:
        return 2 * self.n + 2

    @property
    def pad(self) -> int:
        return 2 * self.n + 1

    @property
    def k(self) -> int:
        return len(self.tracks)

    def is_empty(self) -> bool:
        return self.dfa.is_empty()

    def truth(self) -> bool:
        """The boolean a track-less automaton stands for."""
        assert not self.tracks, "Only a closed formula has a truth value"
        return bool(self.dfa.accepting[0])

    def accepts(self, words: tuple[Address, ...]) -> bool:
        """Runs the convolution of one address per track."""
        if len(words) != self.k:
            raise ValidationError(
                ErrorCode.ARITY_MISMATCH,
                f"expected {self.k} address(es), got {len(words)}"
            )
        length = max((len(word) for word in words), default=0)
        digits = np.full((length, self.k), self.pad, dtype=np.int64)
        for t, word in enumerate(words):
            digits[:len(word), t] = [letter_digit(l, self.n) for l in word]
        codes = digits @ _powers(self.base, self.k)
        return bool(self.dfa.accepting[self.dfa.run(codes)])

    def symbol_label(self, code: int) -> str:
        digits = _digits(self.base, self.k)[code]
        return '(' + ','.join(
            '_' if d == self.pad else letter_label(digit_letter(int(d), self.n))
            for d in digits
        ) + ')'

    def to_frame(self) -> pd.DataFrame:
        """Transition table restricted to symbols some state uses to stay
        alive; the column labels list one letter per track, _ for padding.
        """
        live = self.dfa.coreachable()
        used = np.flatnonzero(live[self.dfa.table].any(axis=0))
        frame = pd.DataFrame(
            self.dfa.table[:, used],
            columns=[self.symbol_label(int(code)) for code in used],
        )
        frame['accepting'] = self.dfa.accepting
        frame.index.name = 'state'
        frame.attrs['tracks'] = self.tracks
        return frame


def _make(tracks: tuple[str, ...], n: int, dfa: Dfa) -> SyncAutomaton:
    """Restricts to valid convolutions and canonicalises."""
    validity = _validity(n, len(tracks))
    return SyncAutomaton(tracks, n, dfa.product(validity, operator.and_))


def _sink_table(num_states: int, num_symbols: int) -> np.ndarray:
    return np.full((num_states, num_symbols), num_states - 1, dtype=np.int64)


# ---------- Atomic relations ----------

def constant(value: bool, n: int) -> SyncAutomaton:
    return _make((), n, Dfa(np.zeros((1, 1), dtype=np.int64),
                            np.array([value])))


def universe(tracks: tuple[str, ...], n: int) -> SyncAutomaton:
    size = (2 * n + 2) ** len(tracks)
    return _make(tracks, n, Dfa(np.zeros((1, size), dtype=np.int64),
                                np.array([True])))


def nothing(tracks: tuple[str, ...], n: int) -> SyncAutomaton:
    size = (2 * n + 2) ** len(tracks)
    return _make(tracks, n, Dfa(np.zeros((1, size), dtype=np.int64),
                                np.array([False])))


def equal(x: str, y: str, n: int) -> SyncAutomaton:
    """x = y"""
    if x == y:
        return universe((x,), n)
    base, pad = 2 * n + 2, 2 * n + 1
    digits = _digits(base, 2)
    same = (digits[:, 0] == digits[:, 1]) & (digits[:, 0] != pad)
    table = np.vstack([np.where(same, 0, 1), np.ones(len(same))])
    return _make(tuple(sorted((x, y))), n,
                 Dfa(table.astype(np.int64), np.array([True, False])))


def extension(x: str, y: str, word: Address, n: int) -> SyncAutomaton:
    """y = x.word: both tracks agree, then x is padded while y reads word."""
    if not word:
        return equal(x, y, n)
    if x == y:
        return nothing((x,), n)

    tracks = tuple(sorted((x, y)))
    base, pad = 2 * n + 2, 2 * n + 1
    digits = _digits(base, 2)
    dx, dy = digits[:, tracks.index(x)], digits[:, tracks.index(y)]
    size, dead = len(word), len(word) + 1

    table = _sink_table(size + 2, base ** 2)
    reads = [(dx == pad) & (dy == letter_digit(l, n)) for l in word]
    table[0] = np.where((dx == dy) & (dx != pad), 0,
                        np.where(reads[0], 1, dead))
    for i in range(1, size):
        table[i] = np.where(reads[i], i + 1, dead)
    accepting = np.zeros(size + 2, dtype=bool)
    accepting[size] = True
    return _make(tracks, n, Dfa(table, accepting))


def succ(letter: int, x: str, y: str, n: int) -> SyncAutomaton:
    """y = x.letter"""
    return extension(x, y, (letter,), n)


def singleton(x: str, word: Address, n: int) -> SyncAutomaton:
    """x = word"""
    base = 2 * n + 2
    digits = _digits(base, 1)[:, 0]
    size, dead = len(word), len(word) + 1
    table = _sink_table(size + 2, base)
    for i, letter in enumerate(word):
        table[i] = np.where(digits == letter_digit(letter, n), i + 1, dead)
    accepting = np.zeros(size + 2, dtype=bool)
    accepting[size] = True
    return _make((x,), n, Dfa(table, accepting))


def is_lambda(x: str, n: int) -> SyncAutomaton:
    """x = Lambda"""
    return singleton(x, (), n)


def member(x: str, regular: RegularSet) -> SyncAutomaton:
    """x in S"""
    n = regular.n
    states = regular.dfa.num_states
    table = np.hstack([
        regular.dfa.table,
        np.full((states, 1), states, dtype=np.int64),
    ])
    table = np.vstack([table, np.full((1, 2 * n + 2), states)])
    accepting = np.append(regular.dfa.accepting, False)
    return _make((x,), n, Dfa(table.astype(np.int64), accepting))


def atomic(kind: str, *args, n: int) -> SyncAutomaton:
    """Dispatches on the kind of atomic relation.

    Args:
    - kind (str): 'equal' (x, y), 'succ' (letter, x, y), 'extension'
        (x, y, word), 'lambda' (x), 'singleton' (x, word) or 'member' (x, S)
    - n (int): Number of functions

    Returns:
    - SyncAutomaton: The relation
    """
    match kind:
        case 'equal':
            return equal(*args, n=n)
        case 'succ':
            return succ(*args, n=n)
        case 'extension':
            return extension(*args, n=n)
        case 'lambda':
            return is_lambda(*args, n=n)
        case 'singleton':
            return singleton(*args, n=n)
        case 'member':
            x, regular = args
            assert regular.n == n, "Set over a different alphabet"
            return member(x, regular)
    raise ValueError(f"unknown atomic relation '{kind}'")


# ---------- Closure operations ----------

def cylindrify(
    automaton: SyncAutomaton,
    tracks: tuple[str, ...],
) -> SyncAutomaton:
    """Extends to a superset of tracks, the new ones unconstrained."""
    if automaton.tracks == tracks:
        return automaton
    assert set(automaton.tracks) <= set(tracks), "Tracks can only be added"

    base, pad, n = automaton.base, automaton.pad, automaton.n
    positions = [tracks.index(t) for t in automaton.tracks]
    old = _digits(base, len(tracks))[:, positions]
    old_codes = old @ _powers(base, automaton.k)
    old_ended = (old == pad).all(axis=1)

    dfa = automaton.dfa
    tail, dead = dfa.num_states, dfa.num_states + 1
    # Once all old tracks are padded, the old automaton must have accepted
    rows = np.where(
        old_ended[None, :],
        np.where(dfa.accepting[:, None], tail, dead),
        dfa.table[:, old_codes],
    )
    table = np.vstack([
        rows,
        np.where(old_ended, tail, dead)[None, :],
        np.full((1, len(old_codes)), dead),
    ])
    accepting = np.append(dfa.accepting, [True, False])
    return _make(tracks, n, Dfa(table.astype(np.int64), accepting))


_OPERATIONS = {
    'and': operator.and_,
    'or': operator.or_,
    'xor': operator.xor,
    'implies': lambda a, b: ~a | b,
    'iff': lambda a, b: a == b,
}
# Operations that never accept a word both operands reject
_PRESERVE_VALIDITY = {'and', 'or', 'xor'}


def complement(automaton: SyncAutomaton) -> SyncAutomaton:
    """Complement within the valid convolutions."""
    return _make(automaton.tracks, automaton.n, automaton.dfa.complement())


def combine(
    op: str,
    a: SyncAutomaton,
    b: SyncAutomaton | None = None,
) -> SyncAutomaton:
    """Boolean combination after aligning both sides to their joint tracks.

    Args:
    - op (str): 'not' (unary) or 'and', 'or', 'xor', 'implies', 'iff'
    - a (SyncAutomaton): Left operand
    - b (SyncAutomaton, optional): Right operand for binary operations

    Returns:
    - SyncAutomaton: Over the sorted union of the tracks
    """
    if op == 'not':
        return complement(a)
    assert b is not None and a.n == b.n, "Binary operation needs two operands"
    tracks = tuple(sorted(set(a.tracks) | set(b.tracks)))
    a, b = cylindrify(a, tracks), cylindrify(b, tracks)
    dfa = a.dfa.product(b.dfa, _OPERATIONS[op])
    if op in _PRESERVE_VALIDITY:
        return SyncAutomaton(tracks, a.n, dfa)
    return _make(tracks, a.n, dfa)


def project(automaton: SyncAutomaton, var: str) -> SyncAutomaton:
    """Existential projection of a track.

    Words of the remaining tracks are accepted when some address on the
    removed track completes them, including addresses longer than all the
    remaining ones (handled by closing acceptance under padded suffixes).

    Raises:
    - ValidationError: UNBOUND_TRACK if var is not a track
    """
    if var not in automaton.tracks:
        raise ValidationError(
            ErrorCode.UNBOUND_TRACK, f"'{var}' is not a track of the automaton"
        )
    base, pad, n, k = automaton.base, automaton.pad, automaton.n, automaton.k
    t = automaton.tracks.index(var)
    tracks = automaton.tracks[:t] + automaton.tracks[t + 1:]
    table = automaton.dfa.table
    num_states = automaton.dfa.num_states

    remaining = _digits(base, k - 1)
    num_symbols = len(remaining)
    inserted = np.empty((num_symbols, base, k), dtype=np.int64)
    inserted[:, :, :t] = remaining[:, None, :t]
    inserted[:, :, t] = np.arange(base)[None, :]
    inserted[:, :, t + 1:] = remaining[:, None, t:]
    codes = (inserted @ _powers(base, k)).ravel()

    everything = _digits(base, k)
    others_padded = np.delete(everything == pad, t, axis=1).all(axis=1)
    suffix_symbols = np.flatnonzero(others_padded & (everything[:, t] != pad))
    accepting = automaton.dfa.accepting.copy()
    while suffix_symbols.size:
        grown = accepting | accepting[table[:, suffix_symbols]].any(axis=1)
        if np.array_equal(grown, accepting):
            break
        accepting = grown

    start = np.zeros(num_states, dtype=bool)
    start[0] = True
    subsets = [start]
    index = {start.tobytes(): 0}
    symbol_rows = np.repeat(np.arange(num_symbols), base)
    rows = []
    i = 0
    while i < len(subsets):
        members = np.flatnonzero(subsets[i])
        targets = table[members][:, codes]
        successors = np.zeros((num_symbols, num_states), dtype=bool)
        successors[np.tile(symbol_rows, len(members)), targets.ravel()] = True

        row = np.empty(num_symbols, dtype=np.int64)
        for symbol in range(num_symbols):
            key = successors[symbol].tobytes()
            j = index.get(key)
            if j is None:
                j = index[key] = len(subsets)
                subsets.append(successors[symbol])
            row[symbol] = j
        rows.append(row)
        i += 1

    final = np.array([(s & accepting).any() for s in subsets], dtype=bool)
    return _make(tracks, n, Dfa(np.array(rows), final))


def is_empty(automaton: SyncAutomaton) -> bool:
    return automaton.is_empty()


def accepts(automaton: SyncAutomaton, words: tuple[Address, ...]) -> bool:
    return automaton.accepts(words)
