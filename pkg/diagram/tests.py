from django.test import SimpleTestCase
from hypothesis import given, settings

from core.exceptions import NotAdjacent, ParseError, SelfSlide, UnknownLabel
from core.testing import closed_diagrams, configuration, walks
from diagram.serializers import parse_diagram, serialize_diagram
from diagram.services import (
    applicable_events, apply_event, inverse_event, is_closed, moving_profile, run_diagram,
)
from diagram.types import Cross, Direction, MorseDiagram, Slide
from surface_core.services import surface_type
from surface_core.types import EndpointLabel

LEFT, RIGHT = Direction.LEFT, Direction.RIGHT
TORUS = [['B+', 'A+', 'B-', 'A-']]

TORUS_FILE = """morse v1
handle A
handle B
component 1 : B+ A+ B- A-
event slide A+ left over B+
"""


def L(token):
    return EndpointLabel.parse(token)


def slide(mover, direction, entry):
    return Slide(mover=L(mover), direction=direction, entry=L(entry))


def cross(mover, direction):
    return Cross(mover=L(mover), direction=direction)


def torus_diagram(*events):
    return MorseDiagram(handles=('A', 'B'), initial=configuration(TORUS), events=events)


class ApplyEventTests(SimpleTestCase):
    def test_configuration_preserving_slide(self):
        self.assertEqual(apply_event(configuration(TORUS), slide('A+', LEFT, 'B+')), configuration(TORUS))

    def test_slide_lands_on_far_side_of_partner(self):
        result = apply_event(configuration(TORUS), slide('A-', LEFT, 'B-'))
        self.assertEqual(result, configuration([['A-', 'B+', 'A+', 'B-']]))

    def test_cross_moves_label_to_other_end(self):
        result = apply_event(configuration(TORUS), cross('A-', RIGHT))
        self.assertEqual(result, configuration([['A-', 'B+', 'A+', 'B-']]))

    def test_slide_between_components(self):
        result = apply_event(configuration([['A+', 'B-'], ['A-'], ['B+']]), slide('B-', LEFT, 'A+'))
        self.assertEqual(result, configuration([['A+'], ['B-', 'A-'], ['B+']]))

    def test_basepoint_is_a_barrier(self):
        with self.assertRaises(NotAdjacent):
            apply_event(configuration(TORUS), slide('B+', LEFT, 'A-'))
        with self.assertRaises(NotAdjacent):
            apply_event(configuration(TORUS), cross('A+', LEFT))

    def test_entry_must_be_the_neighbor(self):
        with self.assertRaises(NotAdjacent):
            apply_event(configuration(TORUS), slide('A+', LEFT, 'B-'))

    def test_self_slide_and_unknown_label(self):
        with self.assertRaises(SelfSlide):
            apply_event(configuration([['A+', 'A-']]), slide('A+', RIGHT, 'A-'))
        with self.assertRaises(UnknownLabel):
            apply_event(configuration(TORUS), cross('Z+', LEFT))

    @given(walks())
    def test_walks_preserve_labels_and_surface(self, d):
        run = run_diagram(d)
        expected = surface_type(d.initial)
        for cfg in run.configurations:
            self.assertEqual(sorted(map(str, cfg.labels())), sorted(map(str, d.initial.labels())))
            self.assertEqual(surface_type(cfg), expected)

    @given(walks())
    def test_inverse_restores_configuration(self, d):
        cfg = run_diagram(d).final
        for event in applicable_events(cfg):
            self.assertEqual(apply_event(apply_event(cfg, event), inverse_event(event)), cfg)

    def test_torus_slides_keep_cyclic_order(self):
        reference = ['B+', 'A+', 'B-', 'A-']
        rotations = [reference[i:] + reference[:i] for i in range(4)]
        mirror = ['A+', 'B+', 'A-', 'B-']
        for row in rotations + [mirror[i:] + mirror[:i] for i in range(4)]:
            family = rotations if row in rotations else [mirror[i:] + mirror[:i] for i in range(4)]
            cfg = configuration([row])
            for event in applicable_events(cfg):
                if isinstance(event, Slide):
                    after = [str(x) for x in apply_event(cfg, event).components[0].labels]
                    self.assertIn(after, family)


class RunDiagramTests(SimpleTestCase):
    def test_empty_diagram_is_closed(self):
        run = run_diagram(torus_diagram())
        self.assertEqual(run.configurations, (configuration(TORUS),))
        self.assertTrue(run.closed)

    def test_single_preserving_slide_is_closed(self):
        self.assertTrue(is_closed(torus_diagram(slide('A+', LEFT, 'B+'))))

    def test_single_cross_is_open(self):
        self.assertFalse(is_closed(torus_diagram(cross('A-', RIGHT))))

    def test_error_carries_event_index(self):
        d = torus_diagram(slide('A+', LEFT, 'B+'), cross('A+', LEFT))
        with self.assertRaises(NotAdjacent) as ctx:
            run_diagram(d)
        self.assertEqual(ctx.exception.event_index, 1)

    @given(closed_diagrams())
    def test_walk_and_return_is_closed(self, d):
        self.assertTrue(is_closed(d))


class MovingProfileTests(SimpleTestCase):
    def test_empty(self):
        profiles = moving_profile(torus_diagram())
        self.assertEqual(profiles['A'].plus_moves, ())
        self.assertEqual(profiles['B'].minus_moves, ())

    def test_single_slide(self):
        profiles = moving_profile(torus_diagram(slide('A+', LEFT, 'B+')))
        self.assertEqual(profiles['A'].plus_moves, (LEFT,))
        self.assertEqual(profiles['A'].minus_moves, ())
        self.assertEqual(profiles['B'].plus_moves + profiles['B'].minus_moves, ())


class SerializerTests(SimpleTestCase):
    def test_parse_torus_file(self):
        d = parse_diagram(TORUS_FILE)
        self.assertEqual(d, torus_diagram(slide('A+', LEFT, 'B+')))

    def test_serialize_is_canonical(self):
        self.assertEqual(serialize_diagram(parse_diagram(TORUS_FILE)), TORUS_FILE)

    def test_comments_and_blank_lines(self):
        text = "# 注释\n\nmorse v1\nhandle A  # 把手\ncomponent 1 : A+\ncomponent 2 : A-\nevent cross A- left\n"
        d = parse_diagram(text)
        self.assertEqual(d.events, (cross('A-', LEFT),))

    def test_empty_component_round_trips(self):
        text = "morse v1\ncomponent 1 :\n"
        self.assertEqual(serialize_diagram(parse_diagram(text)), text)

    def test_self_slide_is_rejected(self):
        text = TORUS_FILE.replace("event slide A+ left over B+", "event slide A+ left over A-")
        with self.assertRaises(SelfSlide):
            parse_diagram(text)

    def test_parse_errors_name_the_line(self):
        bad = [
            ("morse v2\n", 1),
            ("morse v1\nhandle A\nhandle A\n", 3),
            ("morse v1\nhandle A\ncomponent x : A+\n", 3),
            ("morse v1\nhandle A\ncomponent 1 : A+ A*\n", 3),
            ("morse v1\nevent slide A+ up over B+\n", 2),
            ("morse v1\nwhatever\n", 2),
        ]
        for text, line in bad:
            with self.assertRaises(ParseError) as ctx:
                parse_diagram(text)
            self.assertEqual(ctx.exception.line, line)

    @settings(max_examples=200)
    @given(walks())
    def test_round_trip_on_values(self, d):
        self.assertEqual(parse_diagram(serialize_diagram(d)), d)
