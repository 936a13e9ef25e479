import unittest

from .test_utils import (
    make_rng, naive_truth, random_formula, random_signature, random_structure,
)
from logic.errors import ErrorCode, ValidationError
from logic.parser import parse_formula
from logic.simpleform import (
    SimpleFormula, flatten, function_depths, is_normalized, is_simple,
    normalize, simplify,
)
from logic.syntax import (
    Var, Const, Apply, Atom, Eq, Not, And, Or, Exists, variable_names,
)


class TestSimple(unittest.TestCase):
    def test_shapes(self):
        self.assertTrue(is_simple(parse_formula("forall X, Y. Y = f(X)")))
        self.assertTrue(is_simple(parse_formula("p(a) & X = Y")))
        self.assertFalse(is_simple(parse_formula("p(f(X))")))
        self.assertFalse(is_simple(parse_formula("f(X) = Y")))
        self.assertFalse(is_simple(parse_formula("Y = f(f(X))")))
        self.assertFalse(is_simple(parse_formula("Y = f(a)")))

    def test_certificate(self):
        with self.assertRaises(ValidationError) as context:
            SimpleFormula(parse_formula("p(f(a))"))
        self.assertEqual(context.exception.code, ErrorCode.NOT_SIMPLE)


class TestFlatten(unittest.TestCase):
    def test_ground_atom(self):
        simple, _ = flatten(parse_formula("p(f(a))"))
        self.assertEqual(
            simple.formula,
            Exists('_v0', Exists('_v1', And(
                Eq(Var('_v0'), Const('a')),
                And(Eq(Var('_v1'), Apply('f', Var('_v0'))),
                    Atom('p', Var('_v1'))),
            )))
        )

    def test_innermost_application_first(self):
        simple, _ = flatten(parse_formula("exists X. p(g(f(X)))"))
        inner = simple.formula.body.body.body
        # _v0 = X & _v1 = f(_v0) & (exists _v2, _v3. _v2 = _v1 & _v3 = g(_v2) & p(_v3))
        self.assertEqual(inner.left, Eq(Var('_v0'), Var('X')))
        self.assertEqual(inner.right.left, Eq(Var('_v1'), Apply('f', Var('_v0'))))
        self.assertIsInstance(inner.right.right, Exists)

    def test_equation_between_applications(self):
        # After the left side is named, _v1 = f(Y) already has the simple shape
        simple, _ = flatten(parse_formula("forall X, Y. f(X) = f(Y)"))
        body = simple.formula.body.body
        self.assertEqual(
            body,
            Exists('_v0', Exists('_v1', And(
                Eq(Var('_v0'), Var('X')),
                And(Eq(Var('_v1'), Apply('f', Var('_v0'))),
                    Eq(Var('_v1'), Apply('f', Var('Y')))),
            )))
        )

    def test_fresh_names_avoid_formula_variables(self):
        formula = parse_formula("exists _v0. p(f(_v0))")
        simple, _ = flatten(formula)
        introduced = variable_names(simple.formula) - variable_names(formula)
        self.assertEqual(introduced, {'_v1', '_v2'})

    def test_simple_formula_untouched(self):
        formula = parse_formula("forall X. exists Y. Y = f(X) & p(Y)")
        simple, fresh = flatten(formula)
        self.assertEqual(simple.formula, formula)
        self.assertEqual(fresh.counter, 0)

    def test_violations_shrink_to_nothing(self):
        formula = parse_formula("p(f(g(a))) | g(X) = f(f(Y))")
        self.assertEqual(function_depths(formula), [2, 2, 1])
        simple, _ = flatten(formula)
        self.assertEqual(function_depths(simple.formula), [])


class TestNormalize(unittest.TestCase):
    def test_basis(self):
        p, q = Atom('p', Var('X')), Atom('q', Var('X'))
        self.assertEqual(
            normalize(parse_formula("forall X. p(X) & q(X)")),
            Not(Exists('X', Not(Not(Or(Not(p), Not(q))))))
        )
        self.assertEqual(
            normalize(parse_formula("exists X. p(X) -> q(X)")),
            Exists('X', Or(Not(p), q))
        )

    def test_double_negation_kept(self):
        formula = parse_formula("~~p(a)")
        self.assertEqual(normalize(formula), formula)

    def test_iff(self):
        normalized = normalize(parse_formula("p(a) <-> q(a)"))
        self.assertTrue(is_normalized(normalized))
        self.assertIsInstance(normalized, Not)


class TestEquivalence(unittest.TestCase):
    def test_random_formulas_keep_their_truth(self):
        """normalize(flatten(F)) and F agree on random finite structures."""
        rng = make_rng(2)
        for _ in range(200):
            sig = random_signature(rng)
            formula = random_formula(rng, sig, depth=4)
            simplified = simplify(formula)
            self.assertTrue(is_simple(simplified))
            self.assertTrue(is_normalized(simplified))
            for _ in range(50):
                structure = random_structure(rng, sig, max_size=4)
                self.assertEqual(
                    naive_truth(formula, structure),
                    naive_truth(simplified, structure),
                )


if __name__ == '__main__':
    unittest.main()
