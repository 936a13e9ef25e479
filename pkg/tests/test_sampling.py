import unittest

from .test_checker import TRUTHS, read_model_sample
from .test_utils import make_rng, presentation_catalog, random_formula
from engine.checker import eval_sentence
from engine.models import ModelPresentation, Root
from engine.sampling import SampledStructure, coloring_holds
from logic.parser import parse_formula
from logic.syntax import Signature


def sampled_value(model: ModelPresentation, text: str):
    sampled = SampledStructure.of(model)
    return sampled.evaluate(parse_formula(text, model.sig), coloring_holds(model))


class TestSampledStructure(unittest.TestCase):
    def test_elements_shortest_first(self):
        model = read_model_sample('chain_zchain.json')
        sampled = SampledStructure.of(model, length=3, size=5)
        self.assertEqual(sampled.elements[:2], [(0,), (0, 0)])
        self.assertEqual(len(sampled.elements), 5)
        self.assertFalse(sampled.complete)

    def test_definite_values_are_the_model_values(self):
        for name, text, truth in TRUTHS:
            value = sampled_value(read_model_sample(name), text)
            self.assertIn(value, (None, truth), f"{name}: {text}")

    def test_counterexamples_and_witnesses_decide(self):
        chain = read_model_sample('chain.json')
        self.assertIs(sampled_value(chain, "p(a)"), True)
        self.assertIs(sampled_value(chain, "forall X. p(X) -> p(f(X))"), False)
        self.assertIs(sampled_value(chain, "exists X. p(X)"), True)
        # No witness among finitely many elements says nothing about D
        self.assertIsNone(sampled_value(chain, "exists X. f(X) = a"))

    def test_finite_domain_is_sampled_completely(self):
        sig = Signature(('a', 'b'), (), ('p',))
        model = ModelPresentation(sig, (Root(),))
        self.assertTrue(SampledStructure.of(model).complete)
        self.assertIs(sampled_value(model, "forall X. ~p(X)"), True)
        self.assertIs(sampled_value(model, "forall X. X = a | X = b"), False)
        self.assertIs(sampled_value(model, "exists X. X != a & X != b"), True)

    def test_random_formulas_agree_with_automata(self):
        rng = make_rng(7)
        for model in presentation_catalog():
            sampled = SampledStructure.of(model)
            holds = coloring_holds(model)
            for _ in range(3):
                formula = random_formula(rng, model.sig, depth=2)
                value = sampled.evaluate(formula, holds)
                if value is not None:
                    self.assertEqual(value, eval_sentence(model, formula))


if __name__ == '__main__':
    unittest.main()
