"""
Three-valued evaluation of first-order formulas on a finite part of a
presented model.

Quantifiers range over a sample of D while terms and atoms are evaluated
exactly on addresses. An existential is true once a sampled witness turns
up, a universal false once a sampled counterexample does; otherwise the
value stays undecided (None) unless the sample is all of D. A definite
value is therefore the truth value in the whole model.
"""
from __future__ import annotations

from typing import Callable

from logic.syntax import (
    Signature, Var, Const, Apply, Atom, Eq, Not, And, Or, Implies, Iff,
    Exists, Forall, Truth, Falsity, Formula, Term,
)
from .automata import Address, RegularSet
from .models import ModelPresentation, constant_address, embed, induced_fn

from settings import Settings
SETTINGS = Settings.get_settings()

# holds(l, address): does the 1-based predicate l hold at the address
Holds = Callable[[int, Address], bool]


class SampledStructure:
    """The elements of D up to an address length, at most a number of them.

    Attributes:
    - sig (Signature): The language
    - domain (RegularSet): D
    - elements (list[Address]): The sample, shortest addresses first
    - complete (bool): The sample is all of D
    """
    def __init__(
        self,
        sig: Signature,
        domain: RegularSet,
        elements: list[Address],
        complete: bool,
    ):
        self.sig = sig
        self.domain = domain
        self.elements = elements
        self.complete = complete
        self._images: dict[tuple[str, Address], Address] = {}
        self._holds: Holds = lambda l, address: False

    @classmethod
    def of(
        cls,
        model: ModelPresentation,
        domain: RegularSet | None = None,
        length: int = SETTINGS.SAMPLE_LENGTH,
        size: int = SETTINGS.SAMPLE_SIZE,
    ) -> SampledStructure:
        domain = domain if domain is not None else embed(model)
        # Without functions D is the finite set of component roots
        length = max(length, len(model.components))
        elements = domain.sample(length)[:size]
        complete = model.sig.n == 0 and len(elements) == len(model.components)
        return cls(model.sig, domain, elements, complete)

    def evaluate(self, formula: Formula, holds: Holds) -> bool | None:
        """Value of a closed formula, None when the sample does not decide it.

        Args:
        - formula (Formula): Closed formula over the language
        - holds (Holds): The colorings, as a membership test

        Returns:
        - bool | None: The truth value in the model, or None
        """
        self._holds = holds
        return self._value(formula, {})

    def _term(self, term: Term, env: dict[str, Address]) -> Address:
        match term:
            case Var(name):
                return env[name]
            case Const(name):
                return constant_address(self.sig.constant_index(name))
            case Apply(function, arg):
                address = self._term(arg, env)
                image = self._images.get((function, address))
                if image is None:
                    image = self._images[(function, address)] = induced_fn(
                        self.domain, self.sig.function_index(function), address
                    )
                return image
        raise TypeError(f"not a term: {term!r}")

    def _value(self, formula: Formula, env: dict[str, Address]) -> bool | None:
        match formula:
            case Truth():
                return True
            case Falsity():
                return False
            case Atom(predicate, arg):
                return self._holds(
                    self.sig.predicate_index(predicate), self._term(arg, env)
                )
            case Eq(left, right):
                return self._term(left, env) == self._term(right, env)
            case Not(body):
                value = self._value(body, env)
                return None if value is None else not value
            case And(l, r):
                left = self._value(l, env)
                if left is False:
                    return False
                right = self._value(r, env)
                if right is False:
                    return False
                return True if left and right else None
            case Or(l, r):
                left = self._value(l, env)
                if left is True:
                    return True
                right = self._value(r, env)
                if right is True:
                    return True
                return False if left is False and right is False else None
            case Implies(l, r):
                left = self._value(l, env)
                if left is False:
                    return True
                right = self._value(r, env)
                if right is True:
                    return True
                return False if left is True and right is False else None
            case Iff(l, r):
                left, right = self._value(l, env), self._value(r, env)
                return None if left is None or right is None else left == right
            case Exists(var, body):
                return self._quantify(var, body, env, True)
            case Forall(var, body):
                return self._quantify(var, body, env, False)
        raise TypeError(f"not a formula: {formula!r}")

    def _quantify(
        self,
        var: str,
        body: Formula,
        env: dict[str, Address],
        existential: bool,
    ) -> bool | None:
        undecided = False
        for element in self.elements:
            value = self._value(body, {**env, var: element})
            if value is existential:
                return existential
            undecided = undecided or value is None
        if self.complete and not undecided:
            return not existential
        return None


def coloring_holds(model: ModelPresentation) -> Holds:
    """Membership test for the colorings of a presentation."""
    return lambda l, address: model.coloring(l).accepts(address)
