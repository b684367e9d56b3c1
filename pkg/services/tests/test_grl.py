"""
Tests for GRL generators, parity checks and the symmetric-sum helpers
"""

import numpy as np
from django.test import SimpleTestCase

from services import codes, matrix
from services.errors import DuplicateElement, SpecInvariantViolated, WrongMixingSize
from services.gf import field_new
from services.grl import (
    GrlSpec,
    MConvention,
    MixingLayout,
    grl_generator,
    grl_parity_check,
    grs_generator,
    m_matrix,
    make_spec,
    roth_lempel_a,
    rs_systematic,
    special_a,
    sym_sums,
    ui_coefficients,
    weighted_power_sum,
)


class GrlSpecTestCase(SimpleTestCase):
    """Test construction-time invariants of GrlSpec"""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.ctx = field_new(11)
        cls.A = special_a(cls.ctx, 1, 8, 4)

    def test_defaults_to_unit_scalings(self):
        """Test v defaults to all ones"""
        spec = make_spec(self.ctx, (0, 1, 2, 4, 5), self.A, 4)
        self.assertEqual(spec.v, (1, 1, 1, 1, 1))
        self.assertEqual((spec.n, spec.l, spec.length), (5, 3, 8))

    def test_duplicate_alpha(self):
        """Test repeated evaluation points are refused"""
        with self.assertRaisesMessage(SpecInvariantViolated, "alpha entries must be distinct"):
            make_spec(self.ctx, (0, 1, 1, 4, 5), self.A, 4)

    def test_zero_scaling(self):
        """Test a zero entry of v is refused"""
        with self.assertRaises(SpecInvariantViolated):
            make_spec(self.ctx, (0, 1, 2, 4, 5), self.A, 4, v=(1, 1, 0, 1, 1))

    def test_singular_mixing_matrix(self):
        """Test A must be invertible"""
        A = matrix.from_rows(self.ctx, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
        with self.assertRaisesMessage(SpecInvariantViolated, "invertible"):
            make_spec(self.ctx, (0, 1, 2, 4, 5), A, 4)

    def test_parameter_window(self):
        """Test l <= k < n is enforced"""
        with self.assertRaises(SpecInvariantViolated):
            make_spec(self.ctx, (0, 1, 2, 4), self.A, 4)
        with self.assertRaises(SpecInvariantViolated):
            make_spec(self.ctx, (0, 1, 2, 4, 5), self.A, 2)

    def test_equality_and_replacement(self):
        """Test specs compare by value and with_v builds a new spec"""
        a = make_spec(self.ctx, (0, 1, 2, 4, 5), self.A, 4)
        b = make_spec(self.ctx, [0, 1, 2, 4, 5], special_a(self.ctx, 1, 8, 4), 4)
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))
        c = a.with_v((2, 2, 2, 2, 2))
        self.assertNotEqual(a, c)
        self.assertIsInstance(c, GrlSpec)


class SymmetricSumsTestCase(SimpleTestCase):
    """Test e1, e2, sum of squares, P and R"""

    def test_gf11_triple(self):
        """Test the sums of {0,1,2} over GF(11)"""
        s = sym_sums(field_new(11), (0, 1, 2))
        self.assertEqual((s.e1, s.e2, s.sum_sq, s.P, s.R), (3, 2, 5, 7, 3))

    def test_gf7_pair(self):
        """Test P vanishes on {1,2} over GF(7)"""
        s = sym_sums(field_new(7), (1, 2))
        self.assertEqual((s.e1, s.e2, s.sum_sq, s.P), (3, 2, 5, 0))

    def test_empty_subset(self):
        """Test every sum of the empty set is zero"""
        s = sym_sums(field_new(7), ())
        self.assertEqual((s.e1, s.e2, s.sum_sq, s.P, s.R), (0, 0, 0, 0, 0))

    def test_duplicates(self):
        """Test repeated entries are refused"""
        with self.assertRaises(DuplicateElement):
            sym_sums(field_new(7), (1, 1))


class UiCoefficientsTestCase(SimpleTestCase):
    """Test the dual-GRS weights u_i and their power sums"""

    def test_gf13(self):
        """Test u for the GF(13) self-dual points"""
        self.assertEqual(ui_coefficients(field_new(13), (1, 4, 5, 6, 9)).u, (12, 3, 9, 3, 12))

    def test_gf19(self):
        """Test u for the GF(19) self-dual points"""
        self.assertEqual(ui_coefficients(field_new(19), (2, 3, 6, 16, 17)).u, (5, 4, 17, 5, 7))

    def test_power_sum_branches(self):
        """Test sum u_i alpha_i^j is 0, 0, 1, e1, P for j = 0..4 on three points"""
        ctx = field_new(5)
        alpha = (0, 1, 2)
        u = ui_coefficients(ctx, alpha).u
        self.assertEqual(u, (3, 4, 3))
        sums = [weighted_power_sum(ctx, u, alpha, j) for j in range(5)]
        s = sym_sums(ctx, alpha)
        self.assertEqual(sums, [0, 0, 1, s.e1, s.P])
        self.assertNotEqual(sums[4], s.R)

    def test_power_sum_branches_random(self):
        """Test the branches on seeded random point sets"""
        rng = np.random.default_rng(7)
        for q in (7, 11, 13):
            ctx = field_new(q)
            for _ in range(20):
                n = int(rng.integers(3, 7))
                alpha = tuple(int(a) for a in rng.choice(q, size=n, replace=False))
                u = ui_coefficients(ctx, alpha).u
                s = sym_sums(ctx, alpha)
                got = [weighted_power_sum(ctx, u, alpha, j) for j in range(n + 2)]
                self.assertEqual(got, [0] * (n - 1) + [1, s.e1, s.P], msg=str(alpha))


class GeneratorTestCase(SimpleTestCase):
    """Test the GRL generator layout"""

    def test_gf11_cor33_generator(self):
        """Test the [8,4] GF(11) generator with cor33 A(1,8,4)"""
        ctx = field_new(11)
        spec = make_spec(ctx, (0, 1, 2, 4, 5), special_a(ctx, 1, 8, 4, MixingLayout.COR33), 4)
        self.assertEqual(
            matrix.rows_as_codes(grl_generator(spec)),
            [
                [1, 1, 1, 1, 1, 0, 0, 0],
                [0, 1, 2, 4, 5, 1, 8, 1],
                [0, 1, 4, 5, 3, 4, 1, 0],
                [0, 1, 8, 9, 4, 1, 0, 0],
            ],
        )

    def test_gf7_cor33_generator(self):
        """Test the [8,4] GF(7) generator with cor33 A(2,4,3)"""
        ctx = field_new(7)
        spec = make_spec(ctx, (1, 2, 3, 4, 5), special_a(ctx, 2, 4, 3), 4)
        self.assertEqual(
            matrix.rows_as_codes(grl_generator(spec)),
            [
                [1, 1, 1, 1, 1, 0, 0, 0],
                [1, 2, 3, 4, 5, 2, 4, 1],
                [1, 4, 2, 2, 4, 3, 1, 0],
                [1, 1, 6, 1, 6, 1, 0, 0],
            ],
        )

    def test_scalings_multiply_columns(self):
        """Test v scales the Vandermonde columns only"""
        ctx = field_new(13)
        spec = make_spec(ctx, (1, 4, 5, 6, 9), special_a(ctx, 10, 3, 9, MixingLayout.SELFDUAL), 4, v=(6, 3, 1, 3, 6))
        G = matrix.rows_as_codes(grl_generator(spec))
        self.assertEqual(G[0], [6, 3, 1, 3, 6, 0, 0, 0])
        self.assertEqual(G[1][:5], [6, 12, 5, 5, 2])
        self.assertEqual([row[5:] for row in G[1:]], [[10, 9, 1], [3, 1, 0], [1, 0, 0]])

    def test_special_layouts(self):
        """Test the three anti-triangular layouts"""
        ctx = field_new(13)
        self.assertEqual(matrix.rows_as_codes(special_a(ctx, 1, 2, 3, "cor33")), [[1, 2, 1], [3, 1, 0], [1, 0, 0]])
        self.assertEqual(matrix.rows_as_codes(special_a(ctx, 1, 2, 3, "selfdual")), [[1, 3, 1], [2, 1, 0], [1, 0, 0]])
        self.assertEqual(matrix.rows_as_codes(special_a(ctx, 1, 2, 3, "triangular")), [[0, 0, 1], [0, 1, 3], [1, 2, 1]])
        for layout in MixingLayout:
            self.assertEqual(matrix.det(special_a(ctx, 5, 6, 7, layout)), 12)

    def test_roth_lempel_tail(self):
        """Test l = 2 puts [[0,1],[1,delta]] in the last two rows"""
        ctx = field_new(2, 3)
        spec = make_spec(ctx, (0, 1, 2, 3), roth_lempel_a(ctx, 5), 3)
        G = matrix.rows_as_codes(grl_generator(spec))
        self.assertEqual([row[4:] for row in G], [[0, 0], [0, 1], [1, 5]])

    def test_grs_generator(self):
        """Test GRS columns are scaled Vandermonde columns and zero scalings fail"""
        ctx = field_new(7)
        G = grs_generator(ctx, (1, 2, 3), (2, 1, 3), 2)
        self.assertEqual(matrix.rows_as_codes(G), [[2, 1, 3], [2, 2, 2]])
        with self.assertRaises(SpecInvariantViolated):
            grs_generator(ctx, (1, 2, 3), (2, 0, 3), 2)


class ParityCheckTestCase(SimpleTestCase):
    """Test the closed-form parity check"""

    def test_tail_matrix_conventions(self):
        """Test the exact and printed tail matrices differ only in the corner"""
        ctx = field_new(13)
        alpha = (1, 4, 5, 6, 9)
        self.assertEqual(matrix.rows_as_codes(m_matrix(ctx, alpha)), [[0, 0, 12], [0, 12, 1], [12, 1, 11]])
        self.assertEqual(
            matrix.rows_as_codes(m_matrix(ctx, alpha, MConvention.PRINTED)),
            [[0, 0, 12], [0, 12, 1], [12, 1, 9]],
        )
        self.assertEqual(matrix.det(m_matrix(ctx, alpha)), 1)

    def test_parity_check_annihilates_generator(self):
        """Test G H^T = 0 and rank H = n + 3 - k"""
        ctx = field_new(11)
        spec = make_spec(ctx, (0, 1, 2, 4, 5), special_a(ctx, 1, 8, 4), 4)
        G, H = grl_generator(spec), grl_parity_check(spec)
        self.assertEqual(H.shape, (4, 8))
        self.assertFalse(np.any((G @ H.T).view(np.ndarray)))
        self.assertEqual(matrix.rank(H), 4)
        self.assertEqual(codes.code_from_generator(H), codes.dual_code(codes.code_from_generator(G)))

    def test_parity_check_with_scalings_and_larger_n(self):
        """Test the contract with nontrivial v and n - k > 1"""
        ctx = field_new(2, 3)
        A = matrix.from_rows(ctx, [[1, 2, 3], [0, 1, 4], [0, 0, 5]])
        spec = make_spec(ctx, (0, 1, 2, 3, 4, 5, 6), A, 4, v=(1, 2, 3, 4, 5, 6, 7))
        G, H = grl_generator(spec), grl_parity_check(spec)
        self.assertEqual(H.shape, (6, 10))
        self.assertFalse(np.any((G @ H.T).view(np.ndarray)))
        self.assertEqual(matrix.rank(H), 6)

    def test_needs_three_tail_columns(self):
        """Test l = 2 has no closed-form parity check"""
        ctx = field_new(2, 3)
        spec = make_spec(ctx, (0, 1, 2, 3), roth_lempel_a(ctx, 5), 3)
        with self.assertRaises(WrongMixingSize):
            grl_parity_check(spec)


class ReedSolomonSystematicTestCase(SimpleTestCase):
    """Test the Cauchy-type systematic form of RS codes"""

    def test_systematic_form_spans_rs_code(self):
        """Test (I | B) generates the same code as the Vandermonde"""
        ctx = field_new(11)
        alpha = (0, 1, 2, 4, 5, 7, 9)
        for k in (1, 3, 5):
            data = rs_systematic(ctx, alpha, k)
            self.assertEqual(data.B.shape, (k, 7 - k))
            self.assertEqual(
                codes.code_from_generator(data.systematic_generator),
                codes.code_from_generator(matrix.vandermonde(ctx, alpha, k)),
            )

    def test_small_case_entries(self):
        """Test B on three points of GF(7) with k = 2"""
        data = rs_systematic(field_new(7), (0, 1, 3), 2)
        self.assertEqual(data.etas_left, (6, 1))
        self.assertEqual(data.etas_right, (6,))
        self.assertEqual(matrix.rows_as_codes(data.B), [[5], [3]])
