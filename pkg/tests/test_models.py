import functools
import itertools
import json
import unittest

from .test_utils import (
    component_language, neighbourhood, presentation_catalog, spine_address,
)
from engine.automata import RegularSet
from engine.checker import Evaluator, SetEnv, check_domain
from engine.models import (
    ModelPresentation, NonRoot, Root, canonical_component, component_key,
    constant_address, dump_model, embed, induced_fn, iso_nonroot, load_model,
    model_from_dict, model_to_dict, predecessor,
)
from engine.regex import format_regex, parse_regex, regex_text, regular_set
from engine.search import Bounds, nonroot_components
from logic.errors import ErrorCode, ParseError, ValidationError
from logic.syntax import Signature
from reduction.sns import build_domain

from settings import Settings
SETTINGS = Settings.get_settings()

AF = Signature(('a',), ('f',), ('p',))
AFG = Signature(('a',), ('f', 'g'), ())


def read_model_sample(name: str) -> ModelPresentation:
    return load_model(SETTINGS.SAMPLES_DIR.joinpath('models', name).read_text())


class TestRegex(unittest.TestCase):
    def test_printed_expression_denotes_the_same_language(self):
        for text, n in [
            ('0 1*', 1), ('0 (1 1)*', 1), ('0 0 b1* | 0 0 1 1*', 1),
            ('0 (1|2)* 2', 2), ('0 .?', 2), ('{}', 1), ('()', 1),
            ('(0 | 0 0) b2+', 2),
        ]:
            regular = regular_set(text, n)
            self.assertEqual(regular_set(regex_text(regular), n), regular, text)

    def test_tree_printer(self):
        self.assertEqual(format_regex(parse_regex('0 (1 | b1)*', 1), 1),
                         '0 (1 | b1)*')

    def test_letter_outside_language(self):
        with self.assertRaises(ValidationError) as context:
            regular_set('0 2', 1)
        self.assertEqual(context.exception.code, ErrorCode.INVALID_MODEL)

    def test_letters_past_nine(self):
        n = 12
        regular = regular_set('0 12 b11* | 0 1 2', n)
        self.assertIn((0, 12, -11, -11), regular)
        self.assertIn((0, 1, 2), regular)
        self.assertNotIn((0, 1), regular)
        self.assertEqual(regular_set(regex_text(regular), n), regular)
        with self.assertRaises(ValidationError) as context:
            regular_set('0 13', n)
        self.assertEqual(context.exception.code, ErrorCode.INVALID_MODEL)

    def test_malformed(self):
        with self.assertRaises(ParseError):
            regular_set('0 (1', 1)


class TestEmbedding(unittest.TestCase):
    def test_catalog_satisfies_domain(self):
        for model in presentation_catalog():
            self.assertTrue(
                check_domain(embed(model), model.sig), model.extra
            )

    def test_single_root(self):
        domain = embed(ModelPresentation(AF))
        self.assertEqual(domain, regular_set('0 1*', 1))

    def test_zchain(self):
        domain = embed(ModelPresentation(AF, (NonRoot((), (1,)),)))
        self.assertEqual(domain, regular_set('0 1* | 0 0 (b1* | 1*)', 1))

    def test_mutations_break_one_clause(self):
        two = Signature(('a',), ('f', 'g'), ())
        cases = [
            (AF, '0 0 1*', 0),
            (AF, '0', 1),
            (AF, '0 1* | 0 b1 b1*', 2),
            (AF, '0 1* | 0 1 b1', 3),
            (two, '0 (1|2)* | 0 0 (1|2)* | 0 0 b1 (2 (1|2)*)? '
                  '| 0 0 b2 (1 (1|2)*)?', 4),
        ]
        for sig, text, broken in cases:
            domain = regular_set(text, sig.n)
            env = SetEnv.build(domain)
            evaluator = Evaluator(sig.n)
            values = [
                evaluator.compile(part, env).truth()
                for part in build_domain(sig).parts
            ]
            expected = [i != broken for i in range(5)]
            self.assertEqual(values, expected, text)
            self.assertFalse(check_domain(domain, sig))


class TestInducedStructure(unittest.TestCase):
    def test_functions_on_zchain(self):
        domain = embed(ModelPresentation(AF, (NonRoot((), (1,)),)))
        self.assertEqual(induced_fn(domain, 1, (0,)), (0, 1))
        self.assertEqual(induced_fn(domain, 1, (0, 0, -1)), (0, 0))
        self.assertEqual(induced_fn(domain, 1, (0, 0)), (0, 0, 1))
        self.assertEqual(predecessor(domain, (0, 0)), (1, (0, 0, -1)))
        self.assertEqual(predecessor(domain, (0, 1)), (1, (0,)))
        self.assertIsNone(predecessor(domain, constant_address(1)))

    def test_undefined_image(self):
        domain = embed(ModelPresentation(AF))
        with self.assertRaises(ValidationError) as context:
            induced_fn(domain, 1, (1,))
        self.assertEqual(context.exception.code, ErrorCode.UNDEFINED_IMAGE)

    def test_equality_axioms_on_catalog(self):
        for model in presentation_catalog():
            domain, sig = embed(model), model.sig
            sample = domain.sample(4)
            roots = {constant_address(j) for j in range(1, sig.k + 1)}
            images = {}
            for address in sample:
                for g in range(1, sig.n + 1):
                    image = induced_fn(domain, g, address)
                    # Distinct functions and arguments never meet
                    self.assertNotIn(image, images, model.extra)
                    self.assertNotIn(image, roots, model.extra)
                    images[image] = (g, address)

    def test_components_are_connected(self):
        # Peeling trailing letters through f_i and its inverse reaches 0^j
        for model in presentation_catalog():
            domain = embed(model)
            for address in domain.sample(4):
                j = sum(1 for _ in itertools.takewhile(lambda l: l == 0, address))
                current = address
                while len(current) > j:
                    if current[-1] > 0:
                        _, source = predecessor(domain, current)
                    else:
                        source = induced_fn(domain, -current[-1], current)
                    self.assertEqual(source, current[:-1], (model.extra, address))
                    current = source
                self.assertEqual(current, constant_address(j))

    def test_components_are_disjoint(self):
        for model in presentation_catalog():
            domain, n = embed(model), model.sig.n
            parts = [
                domain.intersection(component_language(j, n))
                for j in range(1, len(model.components) + 1)
            ]
            for j, (component, part) in enumerate(zip(model.components, parts), 1):
                self.assertTrue(part.accepts(constant_address(j)))
                # Only root components start without a predecessor
                self.assertEqual(
                    predecessor(domain, constant_address(j)) is None,
                    isinstance(component, Root), (model.extra, j)
                )
            for first, second in itertools.combinations(parts, 2):
                self.assertTrue(first.intersection(second).is_empty(), model.extra)
            covered = functools.reduce(
                RegularSet.union, parts, RegularSet.empty(n)
            )
            self.assertEqual(covered, domain, model.extra)

    def test_no_cycles_on_catalog(self):
        for model in presentation_catalog():
            domain, n = embed(model), model.sig.n
            for address in domain.sample(3):
                for length in range(1, 5):
                    for word in itertools.product(range(1, n + 1), repeat=length):
                        current = address
                        for g in word:
                            current = induced_fn(domain, g, current)
                        self.assertNotEqual(current, address, word)


class TestComponents(unittest.TestCase):
    def test_canonical_component(self):
        cases = [
            (NonRoot((1,), (1,)), NonRoot((), (1,))),
            (NonRoot((), (1, 2, 1, 2)), NonRoot((), (1, 2))),
            (NonRoot((2,), (1, 2)), NonRoot((), (2, 1))),
            (NonRoot((1, 2), (2,)), NonRoot((1,), (2,))),
            (Root(), Root()),
        ]
        for component, canonical in cases:
            self.assertEqual(canonical_component(component), canonical)

    def test_period_empty(self):
        with self.assertRaises(ValidationError) as context:
            NonRoot((1,), ())
        self.assertEqual(context.exception.code, ErrorCode.INVALID_MODEL)

    def test_iso_nonroot(self):
        self.assertTrue(iso_nonroot(NonRoot((), (1, 2)), NonRoot((), (2, 1))))
        self.assertTrue(iso_nonroot(NonRoot((1,), (2,)), NonRoot((), (2,))))
        self.assertTrue(iso_nonroot(NonRoot((), (1,)), NonRoot((), (1, 1))))
        self.assertFalse(iso_nonroot(NonRoot((), (1, 2)),
                                     NonRoot((), (1, 1, 2))))
        self.assertFalse(iso_nonroot(NonRoot((), (1,)), NonRoot((), (2,))))

    def test_iso_matches_neighbourhoods(self):
        sig = Signature((), ('f', 'g'), ())

        def deep_spine(component):
            # Spine positions 8..11 cover every phase of a period up to 3
            domain, cache = embed(ModelPresentation(sig, (component,))), {}
            return frozenset(
                neighbourhood(domain, spine_address(1, component, i), 6, cache)
                for i in range(8, 12)
            )

        components = nonroot_components(2, Bounds(max_prefix=2, max_period=3))
        spines = {c: deep_spine(c) for c in components}
        pairs = list(itertools.combinations(components, 2))
        self.assertGreaterEqual(len(pairs), 20)
        isomorphic = 0
        for first, second in pairs:
            expected = iso_nonroot(first, second)
            isomorphic += expected
            self.assertEqual(spines[first] == spines[second], expected,
                             (first, second))
        self.assertGreater(isomorphic, 0)

    def test_extra_components_are_sorted(self):
        model = ModelPresentation(
            AFG, (NonRoot((), (2,)), Root(), NonRoot((), (1,)))
        )
        self.assertEqual(model.extra,
                         (Root(), NonRoot((), (1,)), NonRoot((), (2,))))
        self.assertEqual([component_key(c) for c in model.components][:2],
                         [(0, (), ()), (0, (), ())])

    def test_nonempty(self):
        with self.assertRaises(ValidationError) as context:
            ModelPresentation(Signature((), ('f',), ()))
        self.assertEqual(context.exception.code, ErrorCode.INVALID_MODEL)


class TestModelFiles(unittest.TestCase):
    def test_samples_load(self):
        model = read_model_sample('chain_zchain.json')
        self.assertEqual(model.extra, (NonRoot((), (1,)),))
        self.assertIn((0, 0, -1, -1), model.coloring(1))
        self.assertNotIn((0,), model.coloring(1))

        model = read_model_sample('two_functions.json')
        self.assertEqual(model.extra, (Root(), NonRoot((2,), (1, 2))))
        self.assertEqual(model.coloring(2),
                         regular_set('0 0 (0 | 1 | 2)', 2))

    def test_dump_reads_back(self):
        for name in ('chain.json', 'chain_zchain.json', 'alternating.json',
                     'two_functions.json'):
            model = read_model_sample(name)
            loaded = load_model(dump_model(model))
            self.assertEqual(loaded, model)
            self.assertEqual(loaded.colorings, model.colorings)

    def test_counts_are_grouped(self):
        model = ModelPresentation(
            AF, (NonRoot((), (1,)), NonRoot((), (1,)), Root())
        )
        document = model_to_dict(model)
        self.assertEqual(document['extra_components'], [
            {'type': 'root'},
            {'type': 'nonroot', 'prefix': [], 'period': ['f'], 'count': 2},
        ])
        self.assertEqual(document['predicates'], {'p': '{}'})

    def test_invalid_documents(self):
        signature = AF.to_dict()
        cases = [
            {'extra_components': []},
            {'signature': signature,
             'extra_components': [{'type': 'nonroot', 'period': []}]},
            {'signature': signature,
             'extra_components': [{'type': 'nonroot', 'period': ['g']}]},
            {'signature': signature,
             'extra_components': [{'type': 'loop'}]},
            {'signature': signature,
             'extra_components': [{'type': 'root', 'count': 0}]},
            {'signature': signature, 'predicates': {'q': '0'}},
            {'signature': {'constants': [], 'functions': [], 'predicates': []},
             'extra_components': [{'type': 'nonroot', 'period': ['f']}]},
            {'signature': {'constants': [], 'functions': ['f'],
                           'predicates': []}},
        ]
        for document in cases:
            with self.assertRaises(ValidationError, msg=document) as context:
                model_from_dict(document)
            self.assertEqual(context.exception.code, ErrorCode.INVALID_MODEL)

    def test_not_json(self):
        with self.assertRaises(ParseError):
            load_model('{"signature": ')

    def test_colorings_are_cut_to_the_domain(self):
        document = {'signature': AF.to_dict(), 'predicates': {'p': '.*'}}
        model = model_from_dict(json.loads(json.dumps(document)))
        self.assertEqual(model.coloring(1), embed(model))
        self.assertNotIn((1,), model.coloring(1))


if __name__ == '__main__':
    unittest.main()
