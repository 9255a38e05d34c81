from django.test import SimpleTestCase
from hypothesis import given, strategies as st

from core.exceptions import DuplicateComponent, DuplicateLabel, MissingPartner, NotRealizable
from core.testing import FIXTURE_CONFIGURATIONS, configuration
from surface_core.services import cut_to_disc, handles_of, is_realizable, surface_type, validate_configuration
from surface_core.types import BoundaryConfiguration, EndpointLabel, Sign


def L(token):
    return EndpointLabel.parse(token)


class LabelTests(SimpleTestCase):
    def test_parse_and_partner(self):
        label = L('A+')
        self.assertEqual(label.sign, Sign.PLUS)
        self.assertEqual(str(label.partner), 'A-')
        self.assertEqual(L('B−'), L('B-'))

    def test_rejects_bad_tokens(self):
        for token in ('A', '+', 'A*', '-A+'):
            with self.assertRaises(ValueError):
                L(token)


class ValidateConfigurationTests(SimpleTestCase):
    def test_thrice_punctured_sphere_validates(self):
        validate_configuration(configuration([['A+', 'B-'], ['A-'], ['B+']]))

    def test_duplicate_label(self):
        with self.assertRaises(DuplicateLabel) as ctx:
            validate_configuration(configuration([['A+', 'A+']]))
        self.assertEqual(ctx.exception.label, L('A+'))

    def test_missing_partner(self):
        with self.assertRaises(MissingPartner) as ctx:
            validate_configuration(configuration([['A+']]))
        self.assertEqual(ctx.exception.handle, 'A')

    def test_component_ids_strictly_increasing(self):
        cfg = BoundaryConfiguration.from_lists([['A+'], ['A-']], component_ids=[2, 1])
        with self.assertRaises(DuplicateComponent):
            validate_configuration(cfg)
        cfg = BoundaryConfiguration.from_lists([['A+'], ['A-']], component_ids=[1, 1])
        with self.assertRaises(DuplicateComponent):
            validate_configuration(cfg)

    def test_handles_in_first_appearance_order(self):
        self.assertEqual(handles_of(configuration([['B+', 'A+', 'B-', 'A-']])), ['B', 'A'])


class CutToDiscTests(SimpleTestCase):
    def test_merge_then_merge(self):
        trace = cut_to_disc(configuration([['A+', 'B-'], ['A-'], ['B+']]))
        self.assertEqual(trace.handles, ('A', 'B'))
        self.assertEqual(trace.steps[0], ((L('B-'),), (L('B+'),)))
        self.assertEqual(trace.steps[1], ((),))
        self.assertTrue(trace.realizable)

    def test_split_leaves_two_circles(self):
        trace = cut_to_disc(configuration([['A+', 'A-']]))
        self.assertEqual(trace.steps[-1], ((), ()))
        self.assertFalse(trace.realizable)

    def test_one_holed_torus(self):
        trace = cut_to_disc(configuration([['B+', 'A+', 'B-', 'A-']]))
        self.assertEqual(trace.steps[0], ((L('A+'),), (L('A-'),)))
        self.assertEqual(trace.steps[-1], ((),))
        self.assertTrue(trace.realizable)

    @given(st.sampled_from(FIXTURE_CONFIGURATIONS))
    def test_each_cut_changes_circle_count_by_one(self, lists):
        cfg = configuration(lists)
        trace = cut_to_disc(cfg)
        self.assertEqual(len(trace.steps), len(handles_of(cfg)))
        counts = [len(cfg.components)] + [len(step) for step in trace.steps]
        for before, after in zip(counts, counts[1:]):
            self.assertEqual(abs(before - after), 1)


class SurfaceTypeTests(SimpleTestCase):
    def test_fixtures(self):
        cases = [
            ([['A+', 'B-'], ['A-'], ['B+']], (0, 3, 2)),
            ([['B-'], ['A-'], ['B+', 'A+']], (0, 3, 2)),
            ([['A+'], ['A-']], (0, 2, 1)),
            ([['B+', 'A+', 'B-', 'A-']], (1, 1, 2)),
            ([['H+', 'B+', 'A+'], ['H-', 'B-', 'A-']], (1, 2, 3)),
        ]
        for lists, expected in cases:
            self.assertEqual(surface_type(configuration(lists)).as_tuple(), expected)

    def test_not_realizable(self):
        with self.assertRaises(NotRealizable):
            surface_type(configuration([['A+', 'A-']]))
        self.assertFalse(is_realizable(configuration([['A+', 'A-']])))

    def test_disc_without_handles(self):
        self.assertEqual(surface_type(configuration([[]])).as_tuple(), (0, 1, 0))

    @given(st.sampled_from(FIXTURE_CONFIGURATIONS))
    def test_euler_characteristic(self, lists):
        t = surface_type(configuration(lists))
        self.assertEqual(1 - t.handle_count, 2 - 2 * t.genus - t.boundary_count)
