from django.test import SimpleTestCase
from hypothesis import given, settings

from core.exceptions import NonClosedInput
from core.testing import closed_diagrams, configuration, marked_pairs
from detect.services import find_left_veering, ot_verdict
from detect.types import OvertwistedCertified, Unknown
from diagram.types import Cross, Direction, MorseDiagram, Slide
from splice.services import hopf_band, stabilize
from splice.types import BandSign, MarkedPoint
from surface_core.types import EndpointLabel, Sign
from torus_mcg.services import diagram_monodromy, parse_word, synthesize


def L(token):
    return EndpointLabel.parse(token)


class LeftVeeringTests(SimpleTestCase):
    def test_negative_hopf_band(self):
        witness = find_left_veering(hopf_band(BandSign.NEGATIVE))
        self.assertEqual(witness.handle, 'H')
        self.assertEqual(witness.vertical_end, Sign.PLUS)
        self.assertEqual(witness.moving_end, Sign.MINUS)
        self.assertEqual(witness.event_indices, (0,))

    def test_positive_hopf_band(self):
        self.assertIsNone(find_left_veering(hopf_band(BandSign.POSITIVE)))

    def test_no_events(self):
        d = MorseDiagram(handles=('A',), initial=configuration([['A+'], ['A-']]))
        self.assertIsNone(find_left_veering(d))

    def test_both_ends_moving(self):
        d = MorseDiagram(
            handles=('A',), initial=configuration([['A+'], ['A-']]),
            events=(Cross(mover=L('A-'), direction=Direction.LEFT), Cross(mover=L('A+'), direction=Direction.LEFT)),
        )
        self.assertIsNone(find_left_veering(d))

    def test_mixed_directions(self):
        d = MorseDiagram(
            handles=('A',), initial=configuration([['A+'], ['A-']]),
            events=(Cross(mover=L('A-'), direction=Direction.LEFT), Cross(mover=L('A-'), direction=Direction.RIGHT)),
        )
        self.assertIsNone(find_left_veering(d))

    def test_open_diagram(self):
        d = MorseDiagram(
            handles=('A', 'B'), initial=configuration([['B+', 'A+', 'B-', 'A-']]),
            events=(Cross(mover=L('A-'), direction=Direction.RIGHT),),
        )
        with self.assertRaises(NonClosedInput):
            find_left_veering(d)

    def test_negative_twist_on_torus(self):
        d = synthesize(parse_word("A^-1"))
        self.assertEqual(d.events, (Slide(mover=L('A+'), direction=Direction.LEFT, entry=L('B+')),))
        witness = find_left_veering(d)
        self.assertEqual((witness.handle, witness.vertical_end), ('A', Sign.MINUS))

    @settings(max_examples=100)
    @given(closed_diagrams().flatmap(lambda d: marked_pairs(d.initial).map(lambda pair: (d, pair))))
    def test_negative_stabilization_is_left_veering(self, case):
        d, (p1, p2) = case
        self.assertIsNotNone(find_left_veering(stabilize(d, BandSign.NEGATIVE, p1, p2)))

    @given(closed_diagrams().flatmap(lambda d: marked_pairs(d.initial).map(lambda pair: (d, pair))))
    def test_positive_band_handle_is_never_a_witness(self, case):
        d, (p1, p2) = case
        witness = find_left_veering(stabilize(d, BandSign.POSITIVE, p1, p2))
        if witness is not None:
            self.assertNotEqual(witness.handle, '2.H')


class VerdictTests(SimpleTestCase):
    def test_stabilized_torus_is_certified_directly(self):
        torus = synthesize(parse_word("A"))
        d = stabilize(torus, BandSign.NEGATIVE, MarkedPoint(component=1, gap=0), MarkedPoint(component=1, gap=2))
        verdict = ot_verdict(d)
        self.assertIsInstance(verdict, OvertwistedCertified)
        self.assertEqual(verdict.move_path, ())

    def test_phs_needs_search(self):
        phs = synthesize(parse_word("A B C^-1"))
        self.assertIsNone(find_left_veering(phs))
        self.assertEqual(ot_verdict(phs), Unknown())
        verdict = ot_verdict(phs, search_depth=15)
        self.assertIsInstance(verdict, OvertwistedCertified)
        self.assertGreater(len(verdict.move_path), 0)

    def test_positive_twist_stays_unknown(self):
        d = synthesize(parse_word("A"))
        self.assertEqual(ot_verdict(d, search_depth=3), Unknown())
        self.assertEqual(diagram_monodromy(d).invariant.exponent_sum, 1)

    def test_search_skips_other_pages(self):
        self.assertEqual(ot_verdict(hopf_band(BandSign.POSITIVE), search_depth=5), Unknown())
