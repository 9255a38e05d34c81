from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from core.exceptions import MismatchedN, NonClosedInput, NotStarlike, ParseError
from core.testing import closed_diagrams, configuration, marked_pairs, star_sets
from diagram.serializers import parse_diagram
from diagram.services import is_closed, moving_profile, run_diagram
from diagram.types import Cross, Direction, MorseDiagram, Slide
from splice.assembly import factor_of, prefix_event
from splice.services import hopf_band, make_star_set, parse_points, splice, stabilize, star_order
from splice.types import BandSign, MarkedPoint
from surface_core.services import cut_circles, handles_of, surface_type
from surface_core.types import EndpointLabel

LEFT, RIGHT = Direction.LEFT, Direction.RIGHT

TORUS_FILE = """morse v1
handle A
handle B
component 1 : B+ A+ B- A-
event slide A+ left over B+
"""


def L(token):
    return EndpointLabel.parse(token)


def P(text):
    return parse_points(text)


class PointTests(SimpleTestCase):
    def test_parse_points(self):
        self.assertEqual(P("1:0.0, 2:3"), [
            MarkedPoint(component=1, gap=0, sub_index=0),
            MarkedPoint(component=2, gap=3, sub_index=0),
        ])
        with self.assertRaises(ParseError):
            P("1-0")

    def test_sigma_follows_the_component(self):
        cfg = configuration([['B+', 'A+', 'B-', 'A-']])
        self.assertEqual(make_star_set(cfg, P("1:0,1:2")).sigma, (1, 0))
        cfg = configuration([['A+'], ['A-']])
        self.assertEqual(make_star_set(cfg, P("1:1,2:1")).sigma, (0, 1))

    def test_points_out_of_range(self):
        with self.assertRaises(NotStarlike):
            make_star_set(configuration([['A+'], ['A-']]), P("1:2"))
        with self.assertRaises(NotStarlike):
            make_star_set(configuration([['A+'], ['A-']]), P("3:0"))
        with self.assertRaises(NotStarlike):
            make_star_set(configuration([['A+'], ['A-']]), P("1:1,1:1"))


class StarOrderTests(SimpleTestCase):
    def test_annulus(self):
        result = star_order(configuration([['A+'], ['A-']]), P("1:1.0,2:1.0"))
        self.assertEqual(result.order, (0, 1))
        self.assertTrue(result.starlike)

    def test_single_point(self):
        self.assertTrue(star_order(configuration([['B+', 'A+', 'B-', 'A-']]), P("1:3")).starlike)

    def test_same_gap_follows_sub_index(self):
        cfg = configuration([['A+'], ['A-']])
        self.assertTrue(star_order(cfg, P("1:1.0,1:1.1,1:1.2")).starlike)
        self.assertFalse(star_order(cfg, P("1:1.2,1:1.1,1:1.0")).starlike)

    def test_torus_three_points(self):
        cfg = configuration([['B+', 'A+', 'B-', 'A-']])
        result = star_order(cfg, P("1:0,1:1,1:2"))
        self.assertEqual(result.order, (0, 2, 1))
        self.assertFalse(result.starlike)
        self.assertTrue(star_order(cfg, P("1:0,1:2,1:1")).starlike)


class HopfBandTests(SimpleTestCase):
    def test_negative_band(self):
        band = hopf_band(BandSign.NEGATIVE)
        self.assertEqual(band.events, (Cross(mover=L('H-'), direction=LEFT),))
        self.assertTrue(is_closed(band))
        self.assertEqual(moving_profile(band)['H'].minus_moves, (LEFT,))

    def test_positive_band(self):
        band = hopf_band(BandSign.POSITIVE)
        self.assertEqual(band.events, (Cross(mover=L('H-'), direction=RIGHT),))
        self.assertEqual(surface_type(band.initial).as_tuple(), (0, 2, 1))


class SpliceTests(SimpleTestCase):
    def setUp(self):
        self.torus = parse_diagram(TORUS_FILE)
        self.band = hopf_band(BandSign.NEGATIVE)

    def test_hopf_band_with_torus(self):
        out = splice(
            self.band, make_star_set(self.band.initial, P("1:1.0,2:1.0")),
            self.torus, make_star_set(self.torus.initial, P("1:0.0,1:2.0")),
        )
        self.assertTrue(is_closed(out))
        self.assertEqual(len(out.initial.components), 2)
        self.assertEqual(surface_type(out.initial).as_tuple(), (1, 2, 3))
        self.assertEqual(out.handles, ('1.H', '2.A', '2.B'))
        self.assertEqual(out.initial, configuration([['1.H+', '2.B+', '2.A+'], ['1.H-', '2.B-', '2.A-']]))

    def test_expansion_teleports_in_encounter_order(self):
        out = splice(
            self.band, make_star_set(self.band.initial, P("1:1.0,2:1.0")),
            self.torus, make_star_set(self.torus.initial, P("1:0.0,1:2.0")),
        )
        self.assertEqual(out.events, (
            Cross(mover=L('1.H-'), direction=LEFT),
            Slide(mover=L('1.H-'), direction=LEFT, entry=L('2.A-')),
            Slide(mover=L('1.H-'), direction=LEFT, entry=L('2.B+')),
            Slide(mover=L('2.A+'), direction=LEFT, entry=L('2.B+')),
            Slide(mover=L('2.A+'), direction=LEFT, entry=L('1.H-')),
            Cross(mover=L('2.A+'), direction=LEFT),
        ))

    def test_empty_annulus_factor(self):
        annulus = MorseDiagram(handles=('H',), initial=configuration([['H+'], ['H-']]))
        out = splice(
            self.torus, make_star_set(self.torus.initial, P("1:0,1:2")),
            annulus, make_star_set(annulus.initial, P("1:1,2:1")),
        )
        self.assertTrue(is_closed(out))
        self.assertEqual(surface_type(out.initial).handle_count, 3)

    def test_mismatched_n(self):
        with self.assertRaises(MismatchedN):
            splice(
                self.band, make_star_set(self.band.initial, P("1:1")),
                self.torus, make_star_set(self.torus.initial, P("1:0,1:2")),
            )

    def test_open_input(self):
        open_diagram = self.torus.with_events([Cross(mover=L('A-'), direction=RIGHT)])
        with self.assertRaises(NonClosedInput):
            splice(
                open_diagram, make_star_set(open_diagram.initial, P("1:0,1:2")),
                self.band, make_star_set(self.band.initial, P("1:1,2:1")),
            )

    def test_not_starlike(self):
        with self.assertRaises(NotStarlike):
            splice(
                self.torus, make_star_set(self.torus.initial, P("1:0,1:1,1:2")),
                self.torus, make_star_set(self.torus.initial, P("1:0,1:2,1:1")),
            )


class SpliceManyPointsTests(SimpleTestCase):
    DISC_POINTS = "1:0.0,1:0.1,1:0.2"

    def setUp(self):
        self.torus = parse_diagram(TORUS_FILE)
        self.disc = MorseDiagram(handles=(), initial=configuration([[]]))

    def splice_at(self, d1, p1, d2, p2):
        return splice(d1, make_star_set(d1.initial, P(p1)), d2, make_star_set(d2.initial, P(p2)))

    def test_disc_with_disc(self):
        out = self.splice_at(self.disc, self.DISC_POINTS, self.disc, self.DISC_POINTS)
        self.assertTrue(is_closed(out))
        self.assertEqual(surface_type(out.initial).as_tuple(), (0, 1, 0))

    def test_torus_with_disc(self):
        out = self.splice_at(self.torus, "1:0,1:2,1:1", self.disc, self.DISC_POINTS)
        self.assertEqual(out.initial, configuration([['1.B+', '1.A+', '1.B-', '1.A-']]))
        self.assertEqual(out.events, (Slide(mover=L('1.A+'), direction=LEFT, entry=L('1.B+')),))
        self.assertEqual(surface_type(out.initial).as_tuple(), (1, 1, 2))

    def test_torus_with_torus_three_points(self):
        out = self.splice_at(self.torus, "1:0,1:2,1:1", self.torus, "1:0,1:2,1:1")
        self.assertEqual(out.initial, configuration([
            ['2.B+', '1.A+', '2.A+', '1.B+', '2.B-', '2.A-', '1.B-', '1.A-'],
        ]))
        self.assertEqual(out.events[:3], (
            Slide(mover=L('1.A+'), direction=LEFT, entry=L('2.B+')),
            Slide(mover=L('1.A+'), direction=LEFT, entry=L('1.B+')),
            Slide(mover=L('1.A+'), direction=LEFT, entry=L('2.A-')),
        ))
        self.assertTrue(is_closed(out))
        self.assertEqual(surface_type(out.initial).as_tuple(), (2, 1, 4))

    def test_torus_with_torus_four_points(self):
        points = "1:0,1:3,1:2,1:1"
        self.assertTrue(star_order(self.torus.initial, P(points)).starlike)
        out = self.splice_at(self.torus, points, self.torus, points)
        self.assertTrue(is_closed(out))
        self.assertEqual(surface_type(out.initial).as_tuple(), (2, 1, 4))

    def test_empty_tori_three_points(self):
        empty = self.torus.with_events(())
        out = self.splice_at(empty, "1:0,1:2,1:1", empty, "1:0,1:2,1:1")
        self.assertEqual(out.events, ())
        self.assertEqual(surface_type(out.initial).as_tuple(), (2, 1, 4))


@st.composite
def splice_cases(draw):
    n = draw(st.integers(1, 4))
    d1 = draw(closed_diagrams(max_steps=3))
    d2 = draw(closed_diagrams(max_steps=3))
    return d1, draw(star_sets(d1.initial, n)), d2, draw(star_sets(d2.initial, n))


def cyclic_words(circles):
    """非空圆周的循环字：去掉因子前缀，取字典序最小的旋转。"""
    words = []
    for circle in circles:
        word = [str(x).split('.')[-1] for x in circle]
        if word:
            words.append(min(tuple(word[k:] + word[:k]) for k in range(len(word))))
    return sorted(words)


def factor_view(cfg, factor):
    """切掉另一个因子的全部把手后剩下的边界。"""
    circles = [tuple(c.labels) for c in cfg.components]
    other = [h for h in handles_of(cfg) if not h.startswith(f"{factor}.")]
    if other:
        circles = cut_circles(circles, other)[-1]
    return cyclic_words(circles)


def own_slide(event, factor):
    return isinstance(event, Slide) and factor_of(event.mover) == factor == factor_of(event.entry)


class SplicePropertyTests(SimpleTestCase):
    @settings(max_examples=40)
    @given(splice_cases())
    def test_closed_with_additive_handles(self, case):
        d1, s1, d2, s2 = case
        out = splice(d1, s1, d2, s2)
        self.assertTrue(is_closed(out))
        self.assertEqual(len(out.handles), len(d1.handles) + len(d2.handles))
        self.assertEqual(surface_type(out.initial).handle_count, len(d1.handles) + len(d2.handles))

    @settings(max_examples=40)
    @given(splice_cases())
    def test_restricts_to_each_factor(self, case):
        d1, s1, d2, s2 = case
        out = splice(d1, s1, d2, s2)
        run = run_diagram(out)
        for factor, d in ((1, d1), (2, d2)):
            self.assertEqual(
                [e for e in out.events if own_slide(e, factor)],
                [prefix_event(e, factor) for e in d.events if isinstance(e, Slide)],
            )
            # 本因子的每次滑动完成后，切掉另一因子的把手即得到原图对应时刻的边界
            factor_run = run_diagram(d)
            expected = [cyclic_words(factor_run.configurations[0].as_lists())] + [
                cyclic_words(factor_run.configurations[i + 1].as_lists())
                for i, e in enumerate(d.events) if isinstance(e, Slide)
            ]
            actual = [factor_view(run.configurations[0], factor)] + [
                factor_view(run.configurations[i + 1], factor)
                for i, e in enumerate(out.events) if own_slide(e, factor)
            ]
            self.assertEqual(actual, expected)


class StabilizeTests(SimpleTestCase):
    def test_negative_stabilization_of_torus(self):
        torus = parse_diagram(TORUS_FILE)
        out = stabilize(torus, BandSign.NEGATIVE, *P("1:0,1:2"))
        self.assertTrue(is_closed(out))
        profile = moving_profile(out)['2.H']
        self.assertEqual(profile.plus_moves, ())
        self.assertEqual(set(profile.minus_moves), {LEFT})
        t_in, t_out = surface_type(torus.initial), surface_type(out.initial)
        self.assertEqual(t_out.euler_characteristic, t_in.euler_characteristic - 1)

    def test_positive_stabilization_moves_right(self):
        torus = parse_diagram(TORUS_FILE)
        profile = moving_profile(stabilize(torus, BandSign.POSITIVE, *P("1:0,1:2")))['2.H']
        self.assertEqual(profile.plus_moves, ())
        self.assertEqual(set(profile.minus_moves), {RIGHT})

    @settings(max_examples=30)
    @given(closed_diagrams().flatmap(lambda d: marked_pairs(d.initial).map(lambda p: (d, p))))
    def test_stabilization_is_closed_and_adds_one_handle(self, case):
        d, (p1, p2) = case
        for sign in BandSign:
            out = stabilize(d, sign, p1, p2)
            self.assertTrue(is_closed(out))
            self.assertEqual(surface_type(out.initial).handle_count, len(d.handles) + 1)
