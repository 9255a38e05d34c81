from itertools import combinations, product

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from core.exceptions import NonClosedInput, NotTorusPage, ParseError, PatternMismatch
from core.testing import configuration, torus_diagrams, twist_words, walks
from diagram.services import is_closed, run_diagram
from diagram.types import Cross, Direction, MorseDiagram, Slide
from surface_core.services import surface_type
from surface_core.types import EndpointLabel
from torus_mcg import sl2z
from torus_mcg.moves import apply_morse_move, certificate_search, enumerate_moves
from torus_mcg.services import (
    diagram_monodromy, enhanced_moves, evolving_factorization, format_word, generator_matrix,
    parse_word, reference_configuration, same_open_book, standardize, synthesize,
    torus_configurations, trace_cores, word_invariant,
)
from torus_mcg.types import (
    CoreState, Curve, EquivalenceMode, MappingClassInvariant, MoveId, TwistGen, TwistWord,
)

LEFT, RIGHT = Direction.LEFT, Direction.RIGHT
I = ((1, 0), (0, 1))
M_A = ((1, 1), (0, 1))
M_B = ((1, 0), (-1, 1))
S = ((0, -1), (1, 0))


def L(token):
    return EndpointLabel.parse(token)


def W(text):
    return parse_word(text)


def inv(matrix, exponent):
    return MappingClassInvariant(matrix=matrix, exponent_sum=exponent)


def torus(*events):
    return MorseDiagram(handles=('A', 'B'), initial=reference_configuration(), events=events)


class GeneratorTests(SimpleTestCase):
    def test_generator_matrices(self):
        self.assertEqual(generator_matrix(TwistGen(curve=Curve.A, power=1)), M_A)
        self.assertEqual(generator_matrix(TwistGen(curve=Curve.B, power=1)), M_B)
        self.assertEqual(generator_matrix(TwistGen(curve=Curve.C, power=-3)), I)

    def test_twist_about_a_sends_b_to_a_plus_b(self):
        self.assertEqual(sl2z.apply(M_A, (0, 1)), (1, 1))

    def test_inverse_cancels(self):
        self.assertEqual(word_invariant(W("A^-1 A")), inv(I, 0))

    def test_general_twist_formula(self):
        self.assertEqual(sl2z.twist_matrix((1, 0)), M_A)
        self.assertEqual(sl2z.twist_matrix((0, 1)), M_B)
        for c in [(1, 1), (2, 1), (-1, 3)]:
            for k in (-2, -1, 2):
                self.assertEqual(sl2z.twist_matrix(c, k), sl2z.power(sl2z.twist_matrix(c), k))
            x = (3, -2)
            i = sl2z.intersection(x, c)
            self.assertEqual(sl2z.apply(sl2z.twist_matrix(c), x), (x[0] - i * c[0], x[1] - i * c[1]))

    def test_zero_power_is_rejected(self):
        with self.assertRaises(ValueError):
            TwistGen(curve=Curve.A, power=0)


class WordTests(SimpleTestCase):
    def test_braid_relation(self):
        self.assertEqual(word_invariant(W("A B A")), inv(((0, 1), (-1, 0)), 3))
        self.assertEqual(word_invariant(W("A B A")), word_invariant(W("B A B")))

    def test_chain_relation(self):
        self.assertEqual(word_invariant(W("(A B)^6")), inv(I, 12))
        self.assertEqual(word_invariant(W("A B " * 6)), word_invariant(W("C")))

    def test_empty_word(self):
        self.assertEqual(word_invariant(TwistWord()), inv(I, 0))

    def test_parse_and_format(self):
        w = W("A B^-1 C^2 A^-")
        self.assertEqual(w, TwistWord.of(('A', 1), ('B', -1), ('C', 2), ('A', -1)))
        self.assertEqual(format_word(w), "A B^-1 C^2 A^-1")
        self.assertEqual(W(format_word(w)), w)
        self.assertEqual(W("(A B)^-1"), TwistWord.of(('B', -1), ('A', -1)))
        self.assertEqual(W("1"), TwistWord())

    def test_parse_errors(self):
        for text in ("D", "A^0", "(A B", "A B)", "A^x", "AB", "(A B)^0", "A^2B", "(A B)^2C"):
            with self.assertRaises(ParseError):
                W(text)

    @given(twist_words(), twist_words())
    def test_invariant_is_a_homomorphism(self, u, v):
        iu, iv = word_invariant(u), word_invariant(v)
        self.assertEqual(word_invariant(u + v), inv(sl2z.mul(iu.matrix, iv.matrix), iu.exponent_sum + iv.exponent_sum))

    @given(twist_words(), st.integers(0, 12), st.sampled_from(["A B A B^-1 A^-1 B^-1", "(A B)^6 C^-1"]))
    def test_relators_do_not_change_the_invariant(self, w, at, relator):
        at = min(at, len(w.gens))
        rewritten = TwistWord(gens=w.gens[:at] + W(relator).gens + w.gens[at:])
        self.assertEqual(word_invariant(rewritten), word_invariant(w))

    @given(twist_words(), st.sampled_from(["A", "B^-1", "C"]))
    def test_one_more_generator_changes_the_invariant(self, w, extra):
        self.assertNotEqual(word_invariant(w + W(extra)).exponent_sum, word_invariant(w).exponent_sum)


class TorusPageTests(SimpleTestCase):
    def test_eight_configurations(self):
        configs = torus_configurations()
        self.assertEqual(len(set(configs)), 8)
        for cfg in configs:
            self.assertEqual(surface_type(cfg).as_tuple(), (1, 1, 2))

    def test_enhanced_moves_at_reference(self):
        moves = enhanced_moves(reference_configuration())
        self.assertEqual(len(moves), 8)
        self.assertEqual(sum(m.preferred for m in moves), 4)
        for handle, direction in product('AB', (LEFT, RIGHT)):
            tagged = [m for m in moves if m.handle == handle and m.direction is direction]
            self.assertEqual(len(tagged), 2)
            self.assertNotEqual(tagged[0].slide.mover, tagged[1].slide.mover)

    def test_rejects_other_pages(self):
        mirror = MorseDiagram(handles=('A', 'B'), initial=configuration([['A+', 'B+', 'A-', 'B-']]))
        annulus = MorseDiagram(handles=('H',), initial=configuration([['H+'], ['H-']]))
        for d in (mirror, annulus):
            with self.assertRaises(NotTorusPage):
                diagram_monodromy(d)

    def test_open_diagram(self):
        with self.assertRaises(NonClosedInput):
            diagram_monodromy(torus(Cross(mover=L('A-'), direction=RIGHT)))


class MonodromyTests(SimpleTestCase):
    def test_single_slide(self):
        result = diagram_monodromy(torus(Slide(mover=L('A+'), direction=LEFT, entry=L('B+'))))
        self.assertEqual(result.invariant, inv(((1, -1), (0, 1)), -1))
        self.assertEqual(result.factorization, W("A^-1"))

    def test_empty(self):
        self.assertEqual(diagram_monodromy(torus()).invariant, inv(I, 0))

    def test_slide_table(self):
        table = [
            ([Slide(mover=L('A+'), direction=LEFT, entry=L('B+'))], "A^-1"),
            ([Slide(mover=L('A+'), direction=RIGHT, entry=L('B-'))], "A"),
            ([Slide(mover=L('B-'), direction=LEFT, entry=L('A+'))], "B^-1"),
            ([Slide(mover=L('B-'), direction=RIGHT, entry=L('A-'))], "B"),
            ([Slide(mover=L('A-'), direction=LEFT, entry=L('B-')), Cross(mover=L('A-'), direction=LEFT)], "A^-1"),
            ([Cross(mover=L('A-'), direction=RIGHT), Slide(mover=L('A-'), direction=RIGHT, entry=L('B+'))], "A"),
            ([Cross(mover=L('B+'), direction=LEFT), Slide(mover=L('B+'), direction=LEFT, entry=L('A-'))], "B^-1"),
            ([Slide(mover=L('B+'), direction=RIGHT, entry=L('A+')), Cross(mover=L('B+'), direction=RIGHT)], "B"),
        ]
        for events, word in table:
            self.assertEqual(diagram_monodromy(torus(*events)).invariant, word_invariant(W(word)), word)

    def test_phs(self):
        phs = synthesize(W("A B C^-1"))
        self.assertEqual(len(phs.events), 6)
        self.assertEqual(sum(isinstance(e, Cross) for e in phs.events), 4)
        self.assertEqual(diagram_monodromy(phs).invariant, inv(sl2z.mul(M_A, M_B), -10))
        self.assertEqual(diagram_monodromy(phs).invariant, inv(((0, 1), (-1, 1)), -10))

    @settings(max_examples=500)
    @given(twist_words())
    def test_synthesize_round_trip(self, w):
        d = synthesize(w)
        self.assertTrue(is_closed(d))
        self.assertEqual(diagram_monodromy(d).invariant, word_invariant(w))


class SynthesizeTests(SimpleTestCase):
    def test_single_twist(self):
        d = synthesize(W("A"))
        self.assertEqual(d.events, (Slide(mover=L('A+'), direction=RIGHT, entry=L('B-')),))
        self.assertEqual(diagram_monodromy(d).invariant, inv(M_A, 1))

    def test_boundary_twist_is_four_left_crossings(self):
        d = synthesize(W("C^-1"))
        self.assertEqual(len(d.events), 4)
        self.assertTrue(all(isinstance(e, Cross) and e.direction is LEFT for e in d.events))

    def test_worked_example_core_trace(self):
        d = synthesize(W("B^-1 A B A^-1"))
        self.assertEqual(len(d.events), 4)
        states = trace_cores(d)
        self.assertEqual(states[0], CoreState(a=(1, 0), b=(0, 1)))
        self.assertEqual(states[1:], [
            CoreState(a=(1, 0), b=(1, 1)),
            CoreState(a=(2, 1), b=(1, 1)),
            CoreState(a=(2, 1), b=(-1, 0)),
            CoreState(a=(3, 1), b=(-1, 0)),
        ])

    def test_empty_trace(self):
        self.assertEqual(trace_cores(torus()), [CoreState(a=(1, 0), b=(0, 1))])

    @given(torus_diagrams())
    def test_core_states_stay_unimodular(self, d):
        for state in trace_cores(d):
            self.assertEqual(sl2z.intersection(state.a, state.b), 1)

    @given(torus_diagrams())
    def test_standardize_keeps_monodromy(self, d):
        out = standardize(d)
        self.assertEqual(diagram_monodromy(out).invariant, diagram_monodromy(d).invariant)
        self.assertEqual(out, synthesize(diagram_monodromy(d).factorization))

    @settings(max_examples=500)
    @given(walks(lists=[['B+', 'A+', 'B-', 'A-']], max_steps=10))
    def test_evolving_cores_match_reversed_fixed_cores(self, d):
        result = evolving_factorization(d)
        matrix = I
        for twist in result.evolving:
            matrix = sl2z.mul(matrix, sl2z.twist_matrix(twist.core, twist.sign))
        expected = word_invariant(result.fixed)
        self.assertEqual(matrix, expected.matrix)
        self.assertEqual(sum(t.sign for t in result.evolving), expected.exponent_sum)


def _short_word_matrices(max_length):
    letters = [M_A, M_B, sl2z.inverse(M_A), sl2z.inverse(M_B)]
    found = {I}
    for n in range(1, max_length + 1):
        for word in product(letters, repeat=n):
            m = I
            for letter in word:
                m = sl2z.mul(m, letter)
            found.add(m)
    return sorted(found)


class ConjugacyTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(sl2z.conjugate_in_sl2z(M_A, M_B))
        self.assertFalse(sl2z.conjugate_in_sl2z(M_A, sl2z.inverse(M_A)))
        self.assertIsNone(sl2z.find_conjugator(M_A, sl2z.inverse(M_A), 20))
        self.assertTrue(sl2z.conjugate_in_sl2z(M_A, M_A))
        self.assertFalse(sl2z.conjugate_in_sl2z(S, sl2z.inverse(S)))

    def test_explicit_conjugator(self):
        p = sl2z.mul(sl2z.mul(M_A, M_B), M_A)
        self.assertEqual(sl2z.mul(sl2z.mul(p, M_A), sl2z.inverse(p)), M_B)

    def test_conjugates_are_recognized(self):
        conjugators = [M_A, M_B, S, sl2z.mul(M_A, M_B), sl2z.mul(sl2z.mul(M_B, M_B), S)]
        for m in _short_word_matrices(6):
            for p in conjugators:
                self.assertTrue(sl2z.conjugate_in_sl2z(m, sl2z.mul(sl2z.mul(p, m), sl2z.inverse(p))))

    def test_agrees_with_bounded_search(self):
        matrices = [m for m in _short_word_matrices(6) if max(abs(x) for row in m for x in row) <= 2]
        representatives = []
        for m in matrices:
            for rep in representatives:
                if sl2z.conjugate_in_sl2z(m, rep):
                    self.assertTrue(sl2z.conjugate_in_sl2z(rep, m), (rep, m))
                    self.assertIsNotNone(sl2z.find_conjugator(rep, m, 20), (rep, m))
                    break
            else:
                representatives.append(m)
        # 不同的类之间在界内找不到共轭元
        for a, b in combinations(representatives, 2):
            if sl2z.trace(a) == sl2z.trace(b):
                self.assertIsNone(sl2z.find_conjugator(a, b, 20), (a, b))


class SameOpenBookTests(SimpleTestCase):
    def test_relations(self):
        for left, right in (("A B A", "B A B"), ("(A B)^6", "C")):
            for mode in EquivalenceMode:
                self.assertTrue(same_open_book(synthesize(W(left)), synthesize(W(right)), mode))

    def test_inverse_twist_differs(self):
        self.assertFalse(same_open_book(synthesize(W("A")), synthesize(W("A^-1"))))

    def test_conjugate_twists(self):
        self.assertTrue(same_open_book(synthesize(W("A")), synthesize(W("B"))))
        self.assertFalse(same_open_book(synthesize(W("A")), synthesize(W("B")), EquivalenceMode.STRICT))


class MorseMoveTests(SimpleTestCase):
    def test_insert_then_delete(self):
        d = synthesize(W("A B"))
        event = Cross(mover=L('B+'), direction=LEFT)
        inserted = apply_morse_move(d, MoveId.M1_INSERT, 1, event)
        self.assertEqual(len(inserted.events), 4)
        self.assertEqual(apply_morse_move(inserted, MoveId.M1_DELETE, 1), d)

    def test_chain_expansion_on_phs(self):
        phs = synthesize(W("A B C^-1"))
        expanded = apply_morse_move(phs, MoveId.M4_EXPAND, 0)
        self.assertEqual(len(expanded.events), 14)
        self.assertEqual(diagram_monodromy(expanded).invariant, diagram_monodromy(phs).invariant)
        self.assertEqual(apply_morse_move(expanded, MoveId.M4_CONTRACT, 0), phs)

    def test_braid_move(self):
        d = synthesize(W("A B A"))
        rewritten = apply_morse_move(d, MoveId.M3, 0)
        self.assertEqual(rewritten, synthesize(W("B A B")))

    def test_partner_swap(self):
        d = synthesize(W("A"))
        swapped = apply_morse_move(d, MoveId.M2, 0)
        self.assertEqual(len(swapped.events), 2)
        self.assertEqual(apply_morse_move(swapped, MoveId.M2, 0), d)

    def test_pattern_mismatch(self):
        with self.assertRaises(PatternMismatch):
            apply_morse_move(synthesize(W("A")), MoveId.M4_EXPAND, 0)
        with self.assertRaises(PatternMismatch):
            apply_morse_move(synthesize(W("A")), MoveId.M1_DELETE, 0)
        with self.assertRaises(PatternMismatch):
            apply_morse_move(synthesize(W("A")), MoveId.M1_INSERT, 0, Cross(mover=L('A+'), direction=LEFT))

    @settings(max_examples=25)
    @given(torus_diagrams(max_size=4))
    def test_every_move_preserves_the_invariant(self, d):
        expected = diagram_monodromy(d).invariant
        for step in enumerate_moves(d, include_insertions=True):
            out = apply_morse_move(d, step.move, step.site, step.event)
            self.assertTrue(run_diagram(out).closed)
            self.assertEqual(diagram_monodromy(out).invariant, expected, str(step))


class CertificateSearchTests(SimpleTestCase):
    def test_phs_is_certified(self):
        found = certificate_search(synthesize(W("A B C^-1")), 15)
        self.assertIsNotNone(found)
        self.assertGreater(len(found.path), 0)

    def test_positive_twist_is_not_certified(self):
        self.assertIsNone(certificate_search(synthesize(W("A")), 4))

    def test_existing_witness_at_depth_zero(self):
        found = certificate_search(synthesize(W("A^-1")), 0)
        self.assertEqual(found.path, ())
        self.assertEqual(found.witness.handle, 'A')

    def test_zero_node_cap_stops_at_once(self):
        with self.assertLogs('torus_mcg.moves', 'WARNING'):
            self.assertIsNone(certificate_search(synthesize(W("A B C^-1")), 15, max_nodes=0))
