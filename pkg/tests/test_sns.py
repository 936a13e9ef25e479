import unittest

from .test_utils import make_rng, random_sns_formula
from logic.errors import ErrorCode, ParseError, ValidationError
from logic.parser import parse_formula
from logic.syntax import Signature
from reduction.sns import (
    Lam, ObjVar, Succ, SEq, SMember, SNot, SAnd, SOr, ExistsObj, ExistsSet,
    ForallObj, STrue, assemble_sentence, build_domain, build_mod, letters,
    sns_free_variables, term_address, word_term,
)
from reduction.sns_text import emit, parse_sns
from logic.simpleform import simplify

from settings import Settings
SETTINGS = Settings.get_settings()

AFP = Signature(('a',), ('f',), ('p',))


class TestTerms(unittest.TestCase):
    def test_letter_order(self):
        self.assertEqual(letters(2), (0, 1, 2, -1, -2))

    def test_addresses(self):
        term = word_term((0, -1, 1), ObjVar('x'))
        self.assertEqual(term, Succ(1, Succ(-1, Succ(0, ObjVar('x')))))
        self.assertEqual(term_address(term), ('x', (0, -1, 1)))
        self.assertEqual(term_address(word_term((0, 0))), (None, (0, 0)))


class TestDomain(unittest.TestCase):
    def test_golden_k1_n1(self):
        golden = SETTINGS.GOLDEN_DIR.joinpath('domain_k1_n1.sns').read_text()
        self.assertEqual(emit(build_domain(AFP)), golden.rstrip('\n'))

    def test_always_five_groups(self):
        for sig in (Signature(), Signature(('a', 'b'), ('f', 'g'), ()),
                    Signature((), ('f',), ())):
            domain = build_domain(sig)
            self.assertIsInstance(domain, SAnd)
            self.assertEqual(len(domain.parts), 5)

    def test_no_functions(self):
        domain = build_domain(Signature(('a', 'b'), (), ()))
        roots, *rest = domain.parts
        self.assertEqual(roots, SAnd((
            SMember(word_term((0,)), 'X'), SMember(word_term((0, 0)), 'X'),
        )))
        self.assertEqual(rest, [STrue()] * 4)

    def test_unique_predecessor_pairs(self):
        domain = build_domain(Signature(('a',), ('f', 'g'), ()))
        x = ObjVar('x')
        self.assertEqual(
            domain.parts[4],
            ForallObj('x', SNot(SAnd((
                SMember(Succ(-1, x), 'X'), SMember(Succ(-2, x), 'X'),
            ))))
        )

    def test_only_set_variable_is_x(self):
        objects, sets = sns_free_variables(
            build_domain(Signature(('a',), ('f', 'g'), ('p',)))
        )
        self.assertEqual((objects, sets), (frozenset(), frozenset({'X'})))


class TestMod(unittest.TestCase):
    def test_exists(self):
        mod = build_mod(simplify(parse_formula("exists X. p(X)")), AFP)
        self.assertEqual(emit(mod), "(ex1 x (and (in x X) (in x Y1)))")

    def test_function_equation(self):
        mod = build_mod(simplify(parse_formula("forall X. exists Y. Y = f(X)")), AFP)
        x, y = ObjVar('x'), ObjVar('y')
        equation = SOr((SEq(y, Succ(1, x)), SEq(x, Succ(-1, y))))
        self.assertEqual(
            mod,
            SNot(ExistsObj('x', SAnd((
                SMember(x, 'X'),
                SNot(ExistsObj('y', SAnd((SMember(y, 'X'), equation)))),
            ))))
        )

    def test_constants_are_roots(self):
        sig = Signature(('a', 'b'), ('f',), ('p',))
        mod = build_mod(parse_formula("p(b)", sig), sig)
        self.assertEqual(mod, SMember(Succ(0, Succ(0, Lam())), 'Y1'))

    def test_rejections(self):
        cases = [
            ("p(X)", ErrorCode.OPEN_FORMULA),
            ("p(f(a))", ErrorCode.NOT_SIMPLE),
            ("p(a) & p(a)", ErrorCode.NOT_NORMALIZED),
        ]
        for text, code in cases:
            with self.assertRaises(ValidationError) as context:
                build_mod(parse_formula(text, AFP), AFP)
            self.assertEqual(context.exception.code, code, text)


class TestSentence(unittest.TestCase):
    def test_layout(self):
        sentence = assemble_sentence(parse_formula("exists X. p(f(X))"), AFP)
        self.assertIsInstance(sentence, ExistsSet)
        self.assertEqual(sentence.var, 'X')
        self.assertEqual(sentence.body.var, 'Y1')
        domain, subset, mod = sentence.body.body.parts
        self.assertEqual(domain, build_domain(AFP))
        self.assertEqual(emit(subset), "(all1 x (-> (in x Y1) (in x X)))")
        self.assertEqual(sns_free_variables(sentence),
                         (frozenset(), frozenset()))

    def test_open_formula_rejected(self):
        with self.assertRaises(ValidationError) as context:
            assemble_sentence(parse_formula("p(X)"), AFP)
        self.assertEqual(context.exception.code, ErrorCode.OPEN_FORMULA)


class TestText(unittest.TestCase):
    def test_random_formulas_read_back(self):
        rng = make_rng(3)
        for _ in range(500):
            formula = random_sns_formula(rng)
            self.assertEqual(parse_sns(emit(formula)), formula)

    def test_sentence_reads_back(self):
        sentence = assemble_sentence(
            parse_formula("forall X. p(X) -> p(f(X))"), AFP
        )
        self.assertEqual(parse_sns(emit(sentence)), sentence)

    def test_errors_have_positions(self):
        cases = [
            "(and (in x X)",
            "(in x y)",
            "(in (b0 x) X)",
            "(= x)",
            "(frob x)",
            "(ex1 X (in x X))",
        ]
        for text in cases:
            with self.assertRaises(ParseError, msg=text):
                parse_sns(text)

        with self.assertRaises(ParseError) as context:
            parse_sns("(and true\n  (in x y))")
        self.assertEqual(context.exception.line, 2)


if __name__ == '__main__':
    unittest.main()
