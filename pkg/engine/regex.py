"""
Regular expressions over address letters, used for predicate colorings in
model files.

    0 1*  |  0 0 b1*  |  0 0 1 1*

Letters are `0`, the numbers `1`, `2`.. for f_1, f_2.. and `b1`, `b2`.. for
their inverses; `.` is any letter, `{}` the empty language and `()` the empty
word. Postfix `*`, `+` and `?` bind tighter than juxtaposition, which binds
tighter than `|`. Whitespace separates letters (`1 2` is two letters, `12`
one) and is otherwise ignored.
"""
from __future__ import annotations

from dataclasses import dataclass

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from logic.errors import ErrorCode, ParseError, ValidationError
from reduction.sns import letters
from .automata import RegularSet, crawl, letter_label, digit_letter

REGEX_GRAMMAR = r"""
    ?start: union
    ?union: concat ("|" concat)*
    ?concat: repeat+
    ?repeat: atom
           | repeat "*" -> star
           | repeat "+" -> plus
           | repeat "?" -> optional
    ?atom: NUMBER -> letter
         | BAR -> bar
         | "." -> any
         | "(" ")" -> epsilon
         | "{" "}" -> empty
         | "(" union ")"

    NUMBER: /0|[1-9][0-9]*/
    BAR: /b[1-9][0-9]*/

    %import common.WS
    %ignore WS
"""

_PARSER = Lark(REGEX_GRAMMAR, parser='lalr')


# ---------- Expression trees ----------

@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Letters:
    """One letter out of a nonempty set."""
    options: frozenset[int]


@dataclass(frozen=True)
class Concat:
    parts: tuple


@dataclass(frozen=True)
class Union:
    options: tuple


@dataclass(frozen=True)
class Star:
    body: object


def concat(*parts):
    flat = []
    for part in parts:
        match part:
            case Empty():
                return Empty()
            case Epsilon():
                continue
            case Concat(inner):
                flat.extend(inner)
            case _:
                flat.append(part)
    if not flat:
        return Epsilon()
    return flat[0] if len(flat) == 1 else Concat(tuple(flat))


def union(*options):
    flat: list = []
    letter_set: set[int] = set()
    for option in options:
        match option:
            case Empty():
                continue
            case Union(inner):
                candidates = inner
            case _:
                candidates = (option,)
        for candidate in candidates:
            if isinstance(candidate, Letters):
                letter_set |= candidate.options
            elif candidate not in flat:
                flat.append(candidate)
    if letter_set:
        flat.insert(0, Letters(frozenset(letter_set)))
    if not flat:
        return Empty()
    return flat[0] if len(flat) == 1 else Union(tuple(flat))


def star(body):
    match body:
        case Empty() | Epsilon():
            return Epsilon()
        case Star():
            return body
    return Star(body)


# ---------- Parsing ----------

class _RegexBuilder(Transformer):
    def __init__(self, n: int):
        super().__init__()
        self.n = n

    def _check(self, index: int, token) -> int:
        if index > self.n:
            raise ValidationError(
                ErrorCode.INVALID_MODEL,
                f"letter '{token}' refers to f_{index} but the language has "
                f"{self.n} function(s)"
            )
        return index

    def letter(self, children):
        token = children[0]
        return Letters(frozenset({self._check(int(token), token)}))

    def bar(self, children):
        token = children[0]
        return Letters(frozenset({-self._check(int(token[1:]), token)}))

    def any(self, _):
        return Letters(frozenset(letters(self.n)))

    def epsilon(self, _):
        return Epsilon()

    def empty(self, _):
        return Empty()

    def concat(self, children):
        return concat(*children)

    def union(self, children):
        return union(*children)

    def star(self, children):
        return star(children[0])

    def plus(self, children):
        return concat(children[0], star(children[0]))

    def optional(self, children):
        return union(Epsilon(), children[0])


def parse_regex(text: str, n: int):
    """Parse an expression over the letters of n functions into a tree."""
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise ParseError(
            f"malformed regular expression '{text}'",
            max(getattr(e, 'line', 0) or 0, 0),
            max(getattr(e, 'column', 0) or 0, 0),
        ) from e
    try:
        return _RegexBuilder(n).transform(tree)
    except VisitError as e:
        raise e.orig_exc from e


# ---------- Expression to automaton ----------

class _Nfa:
    """Thompson construction: numbered states, epsilon moves under None."""
    def __init__(self):
        self.moves: list[dict] = []

    def state(self) -> int:
        self.moves.append({})
        return len(self.moves) - 1

    def add(self, source: int, label, target: int):
        self.moves[source].setdefault(label, set()).add(target)

    def build(self, expression, start: int, end: int):
        match expression:
            case Empty():
                pass
            case Epsilon():
                self.add(start, None, end)
            case Letters(options):
                for letter in options:
                    self.add(start, letter, end)
            case Concat(parts):
                current = start
                for part in parts[:-1]:
                    middle = self.state()
                    self.build(part, current, middle)
                    current = middle
                self.build(parts[-1], current, end)
            case Union(options):
                for option in options:
                    self.build(option, start, end)
            case Star(body):
                inner_start, inner_end = self.state(), self.state()
                self.add(start, None, inner_start)
                self.add(start, None, end)
                self.build(body, inner_start, inner_end)
                self.add(inner_end, None, inner_start)
                self.add(inner_end, None, end)

    def closure(self, states) -> frozenset[int]:
        stack, seen = list(states), set(states)
        while stack:
            for target in self.moves[stack.pop()].get(None, ()):
                if target not in seen:
                    seen.add(target)
                    stack.append(target)
        return frozenset(seen)


def to_regular_set(expression, n: int) -> RegularSet:
    nfa = _Nfa()
    start, end = nfa.state(), nfa.state()
    nfa.build(expression, start, end)

    def follow(current: frozenset[int], digit: int) -> frozenset[int]:
        letter = digit_letter(digit, n)
        targets = set()
        for state in current:
            targets |= nfa.moves[state].get(letter, set())
        return nfa.closure(targets)

    dfa = crawl(nfa.closure({start}), 2 * n + 1, follow, lambda s: end in s)
    return RegularSet(n, dfa)


def regular_set(text: str, n: int) -> RegularSet:
    """The RegularSet denoted by an expression in the dialect above."""
    return to_regular_set(parse_regex(text, n), n)


# ---------- Automaton to expression ----------

def from_regular_set(regular: RegularSet):
    """Expression tree of a RegularSet by state elimination."""
    dfa, n = regular.dfa, regular.n
    live = dfa.coreachable()
    if not live[0]:
        return Empty()

    states = [int(s) for s in range(dfa.num_states) if live[s]]
    start, end = 'start', 'end'
    edges: dict[tuple, object] = {(start, 0): Epsilon()}
    for state in states:
        if dfa.accepting[state]:
            edges[(state, end)] = Epsilon()
        for digit in range(2 * n + 1):
            target = int(dfa.table[state, digit])
            if live[target]:
                label = Letters(frozenset({digit_letter(digit, n)}))
                edges[(state, target)] = union(
                    edges.get((state, target), Empty()), label
                )

    for eliminated in states:
        loop = star(edges.pop((eliminated, eliminated), Empty()))
        incoming = [(s, e) for (s, t), e in edges.items() if t == eliminated]
        outgoing = [(t, e) for (s, t), e in edges.items() if s == eliminated]
        for source, _ in incoming:
            del edges[(source, eliminated)]
        for target, _ in outgoing:
            del edges[(eliminated, target)]
        for source, before in incoming:
            for target, after in outgoing:
                edges[(source, target)] = union(
                    edges.get((source, target), Empty()),
                    concat(before, loop, after),
                )

    return edges.get((start, end), Empty())


_PRECEDENCE = {Union: 0, Concat: 1}


def format_regex(expression, n: int, level: int = 0) -> str:
    """Prints a tree in the dialect above, parenthesised where needed."""
    match expression:
        case Empty():
            return '{}'
        case Epsilon():
            return '()'
        case Letters(options):
            if len(options) == 2 * n + 1:
                return '.'
            labels = [letter_label(l) for l in letters(n) if l in options]
            text = ' | '.join(labels)
            return text if len(labels) == 1 or level == 0 else f"({text})"
        case Star(body):
            return format_regex(body, n, level=2) + '*'
        case Concat(parts):
            text = ' '.join(format_regex(p, n, level=2) for p in parts)
            return f"({text})" if level > 1 else text
        case Union(options):
            text = ' | '.join(format_regex(o, n, level=0) for o in options)
            return f"({text})" if level > 0 else text
    raise TypeError(f"not a regular expression: {expression!r}")


def regex_text(regular: RegularSet) -> str:
    """An expression for a RegularSet, parsing back to the same language."""
    return format_regex(from_regular_set(regular), regular.n)
