import tempfile
from io import StringIO
from pathlib import Path

from django.test import SimpleTestCase

from cli.render import RenderFormat, render
from cli.runner import run_cli
from core.exceptions import NonRunnable
from diagram.serializers import parse_diagram
from diagram.services import is_closed
from diagram.types import Cross, Direction, MorseDiagram
from splice.services import hopf_band
from splice.types import BandSign
from surface_core.services import surface_type
from surface_core.types import BoundaryConfiguration, EndpointLabel

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def fixture(name):
    return str(FIXTURES / name)


class CliTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return str(Path(self.tmp.name) / name)

    def run_cli(self, *argv):
        out, err = StringIO(), StringIO()
        code = run_cli(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    def assertLines(self, output, *lines):
        present = output.splitlines()
        for line in lines:
            self.assertIn(line, present)


class InfoTests(CliTestCase):
    def test_torus(self):
        code, out, _ = self.run_cli('info', fixture('torus.morse'))
        self.assertEqual(code, 0)
        self.assertLines(out, 'handles: 2', 'boundary: 1', 'genus: 1', 'closed: true')

    def test_parse_error(self):
        bad = self.path('bad.morse')
        Path(bad).write_text("morse v2\nhandle A\n", encoding='utf-8')
        code, out, _ = self.run_cli('info', bad)
        self.assertEqual(code, 2)
        self.assertLines(out, 'error: ParseError')

    def test_missing_file(self):
        code, _, _ = self.run_cli('info', self.path('nowhere.morse'))
        self.assertEqual(code, 2)

    def test_event_error(self):
        bad = self.path('bad.morse')
        Path(bad).write_text(
            "morse v1\nhandle A\nhandle B\ncomponent 1 : B+ A+ B- A-\nevent slide A+ left over B-\n",
            encoding='utf-8',
        )
        code, out, _ = self.run_cli('info', bad)
        self.assertEqual(code, 3)
        self.assertLines(out, 'error: NotAdjacent', 'event_index: 0')

    def test_usage_errors(self):
        self.assertEqual(self.run_cli('splice', fixture('torus.morse'))[0], 1)
        self.assertEqual(self.run_cli('fly')[0], 1)
        self.assertEqual(self.run_cli('equiv', 'a', 'b', '--mode', 'loose')[0], 1)


class MonodromyCommandTests(CliTestCase):
    def test_phs(self):
        code, out, _ = self.run_cli('monodromy', fixture('phs.morse'))
        self.assertEqual(code, 0)
        self.assertLines(
            out, 'matrix_row1: 0 1', 'matrix_row2: -1 1', 'exponent: -10',
            'factorization: A B C^-1', 'trace: 1',
        )

    def test_not_a_torus_page(self):
        code, _, _ = self.run_cli('monodromy', fixture('hopf_neg.morse'))
        self.assertEqual(code, 4)

    def test_synth_then_equiv(self):
        left, right = self.path('aba.morse'), self.path('bab.morse')
        self.assertEqual(self.run_cli('synth', '--word', 'A B A', '--out', left)[0], 0)
        self.assertEqual(self.run_cli('synth', '--word', 'B A B', '--out', right)[0], 0)
        code, out, _ = self.run_cli('equiv', left, right, '--mode', 'conjugacy')
        self.assertEqual(code, 0)
        self.assertLines(out, 'equivalent: true')

    def test_inverse_twists_differ(self):
        self.run_cli('synth', '--word', 'A', '--out', self.path('a.morse'))
        code, out, _ = self.run_cli('equiv', self.path('a.morse'), fixture('torus.morse'))
        self.assertEqual(code, 0)
        self.assertLines(out, 'equivalent: false')

    def test_bad_word(self):
        code, _, _ = self.run_cli('synth', '--word', 'A D', '--out', self.path('x.morse'))
        self.assertEqual(code, 2)
        self.assertFalse(Path(self.path('x.morse')).exists())

    def test_standardize(self):
        out_path = self.path('std.morse')
        code, out, _ = self.run_cli('standardize', fixture('phs.morse'), '--out', out_path)
        self.assertEqual(code, 0)
        self.assertLines(out, 'events: 6')
        code, out, _ = self.run_cli('monodromy', out_path)
        self.assertLines(out, 'exponent: -10')


class DetectCommandTests(CliTestCase):
    def test_negative_hopf_band(self):
        code, out, _ = self.run_cli('detect-ot', fixture('hopf_neg.morse'))
        self.assertEqual(code, 0)
        self.assertLines(out, 'verdict: overtwisted', 'handle: H', 'vertical_end: H+', 'event_indices: 0', 'moves: -')

    def test_phs_needs_search_depth(self):
        code, out, _ = self.run_cli('detect-ot', fixture('phs.morse'))
        self.assertEqual(code, 0)
        self.assertLines(out, 'verdict: unknown')
        code, out, _ = self.run_cli('detect-ot', fixture('phs.morse'), '--search-depth', '15')
        self.assertEqual(code, 0)
        self.assertLines(out, 'verdict: overtwisted')
        self.assertNotIn('moves: -', out.splitlines())


class SpliceCommandTests(CliTestCase):
    def test_splice_output_reparses(self):
        out_path = self.path('sum.morse')
        code, out, _ = self.run_cli(
            'splice', fixture('torus.morse'), fixture('hopf_neg.morse'),
            '--points1', '1:0.0,1:2.0', '--points2', '1:1.0,2:1.0', '--out', out_path,
        )
        self.assertEqual(code, 0)
        self.assertLines(out, 'handles: 3', 'closed: true')
        d = parse_diagram(Path(out_path).read_text(encoding='utf-8'))
        self.assertTrue(is_closed(d))
        self.assertEqual(surface_type(d.initial).euler_characteristic, -2)

    def test_stabilize_then_detect(self):
        out_path = self.path('stab.morse')
        code, _, _ = self.run_cli(
            'stabilize', fixture('phs.morse'), '--sign', 'neg', '--p1', '1:0', '--p2', '1:2', '--out', out_path,
        )
        self.assertEqual(code, 0)
        code, out, _ = self.run_cli('detect-ot', out_path)
        self.assertLines(out, 'verdict: overtwisted')

    def test_mismatched_points(self):
        code, _, _ = self.run_cli(
            'splice', fixture('torus.morse'), fixture('hopf_neg.morse'),
            '--points1', '1:0', '--points2', '1:1.0,2:1.0', '--out', self.path('x.morse'),
        )
        self.assertEqual(code, 3)

    def test_reproducible(self):
        first, second = self.path('one.morse'), self.path('two.morse')
        args = ['--points1', '1:0.0,1:2.0', '--points2', '1:1.0,2:1.0']
        self.run_cli('splice', fixture('phs.morse'), fixture('hopf_neg.morse'), *args, '--out', first)
        self.run_cli('splice', fixture('phs.morse'), fixture('hopf_neg.morse'), *args, '--out', second)
        self.assertEqual(Path(first).read_bytes(), Path(second).read_bytes())


class RenderTests(CliTestCase):
    def test_ascii(self):
        code, out, _ = self.run_cli('render', fixture('hopf_neg.morse'), '--format', 'ascii')
        self.assertEqual(code, 0)
        self.assertIn('cross H- left', out)
        self.assertTrue(out.startswith('handles: H'))

    def test_svg_is_deterministic(self):
        first, second = self.path('one.svg'), self.path('two.svg')
        self.run_cli('render', fixture('phs.morse'), '--format', 'svg', '--out', first)
        self.run_cli('render', fixture('phs.morse'), '--format', 'svg', '--out', second)
        svg = Path(first).read_text(encoding='utf-8')
        self.assertIn('<svg', svg)
        self.assertIn('stroke-dasharray', svg)
        self.assertEqual(svg, Path(second).read_text(encoding='utf-8'))

    def test_empty_annulus_draws_one_stroke_per_endpoint(self):
        d = parse_diagram(Path(fixture('annulus.morse')).read_text(encoding='utf-8'))
        svg = render(d, RenderFormat.SVG)
        self.assertEqual(svg.count('stroke-width="2"'), 2)
        self.assertEqual(svg.count('stroke-dasharray'), 2)

    def test_cross_leaves_through_the_basepoint(self):
        svg = render(hopf_band(BandSign.NEGATIVE), RenderFormat.SVG)
        # 引线与引出线各两条，H+ 一段，H- 越过基点分成两段
        self.assertEqual(svg.count('stroke-width="2"'), 7)

    def test_unrunnable(self):
        d = MorseDiagram(
            handles=('A',), initial=BoundaryConfiguration.from_lists([['A+', 'A-']]),
            events=(Cross(mover=EndpointLabel.parse('A+'), direction=Direction.RIGHT),),
        )
        with self.assertRaises(NonRunnable):
            render(d)
