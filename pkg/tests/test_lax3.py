from fractions import Fraction as F

import pytest

from hplax.errors import WindowError
from hplax.hptable import HPTable
from hplax.kernel import MatPoly, Poly, X, series_from_moments
from hplax.lax3 import (assemble_l, assemble_m, build_transition,
                        det_transition, normalization_grid, path_transport,
                        propagate, reflect_index, wave_matrix, waves_agree,
                        zcc_residual)
from hplax.nnrr import field_from_table


@pytest.fixture(scope="module")
def table_a(system_a):
    return HPTable(system_a, 9, 9)


@pytest.fixture(scope="module")
def field_a(table_a):
    return field_from_table(table_a, 6, 6)


@pytest.fixture(scope="module")
def norms_a(table_a):
    return normalization_grid(table_a, 6, 6)


@pytest.fixture(scope="module")
def pairs_a(field_a, norms_a):
    return {(n, m): build_transition(field_a, norms_a, n, m)
            for n in range(6) for m in range(6)}


@pytest.fixture(scope="module")
def pairs_nik(nikishin_system):
    table = HPTable(nikishin_system, 7, 7)
    field = field_from_table(table, 5, 5)
    norms = normalization_grid(table, 5, 5)
    return {(n, m): build_transition(field, norms, n, m)
            for n in range(5) for m in range(5)}


class TestNormalizationGrid:
    def test_origin_mass(self, norms_a):
        assert norms_a.h1(0, 0) == 1
        assert norms_a.h2(0, 0) == 1

    def test_h1_10_by_hand(self, norms_a):
        # pairing of x + 3/2 against the shifted first sequence: 7/3 - 9/4
        assert norms_a.h1(1, 0) == F(1, 12)

    def test_a_direction_law(self, norms_a, field_a):
        for n in range(1, 6):
            for m in range(6):
                assert norms_a.h1(n, m) == field_a.a(n, m) * norms_a.h1(n - 1, m)

    def test_b_direction_law(self, norms_a, field_a):
        for n in range(6):
            for m in range(1, 6):
                assert norms_a.h2(n, m) == field_a.b(n, m) * norms_a.h2(n, m - 1)

    def test_cross_direction_laws(self, norms_a, field_a):
        for n in range(5):
            for m in range(5):
                gap = field_a.c(n, m) - field_a.d(n, m)
                assert norms_a.h1(n, m + 1) == gap * norms_a.h1(n, m)
                assert norms_a.h2(n + 1, m) == -gap * norms_a.h2(n, m)

    def test_multiplicative_law_at_11(self, norms_a, field_a):
        assert norms_a.h1(1, 1) == field_a.a(1, 1) * norms_a.h1(0, 1)


class TestBuildTransition:
    def test_fixed_pattern_rows(self, pairs_a):
        pair = pairs_a[(2, 2)]
        assert pair.L.entry(1, 1).is_zero and pair.L.entry(1, 2).is_zero
        assert pair.L.entry(2, 1).is_zero and pair.L.entry(2, 2) == Poly.of(1)
        assert pair.M.entry(1, 1) == Poly.of(1) and pair.M.entry(1, 2).is_zero
        assert pair.M.entry(2, 1).is_zero and pair.M.entry(2, 2).is_zero

    def test_gauge_products_reproduce_a_and_b(self, pairs_a, field_a):
        for (n, m), pair in pairs_a.items():
            assert -pair.alpha4 * pair.alpha2 == field_a.a(n, m)
            assert -pair.alpha5 * pair.alpha3 == field_a.b(n, m)

    def test_a11_product(self, pairs_a):
        pair = pairs_a[(1, 1)]
        assert -pair.alpha4 * pair.alpha2 == F(1, 12)

    def test_leading_entry_at_origin(self, pairs_a):
        assert pairs_a[(0, 0)].L.entry(0, 0) == X + Poly.of(F(3, 2))

    def test_diagonal_entries_encode_c_and_d(self, pairs_a, field_a):
        for (n, m), pair in pairs_a.items():
            assert pair.L.entry(0, 0) == X - Poly.of(field_a.c(n, m))
            assert pair.M.entry(0, 0) == X - Poly.of(field_a.d(n, m))


class TestZeroCurvature:
    def test_zero_at_origin(self, pairs_a):
        res = zcc_residual(pairs_a[(0, 0)], pairs_a[(1, 0)], pairs_a[(0, 1)])
        assert res.is_zero

    def test_zero_on_window_both_systems(self, pairs_a, pairs_nik):
        for pairs, width in ((pairs_a, 5), (pairs_nik, 4)):
            for n in range(width):
                for m in range(width):
                    res = zcc_residual(pairs[(n, m)], pairs[(n + 1, m)],
                                       pairs[(n, m + 1)])
                    assert res.is_zero, (n, m)

    @pytest.mark.parametrize("kind", ["a", "b", "c", "d"])
    def test_single_perturbation_breaks_it(self, field_a, norms_a, kind):
        bad_field = field_a.replace(kind, 1, 1, field_a.value(kind, 1, 1) + 1)
        pairs = {(n, m): build_transition(bad_field, norms_a, n, m)
                 for n in range(3) for m in range(3)}
        residuals = [zcc_residual(pairs[(n, m)], pairs[(n + 1, m)], pairs[(n, m + 1)])
                     for n in range(2) for m in range(2)]
        assert any(not r.is_zero for r in residuals)


class TestDetTransition:
    def test_interior_dets_are_one(self, pairs_a):
        for n in range(1, 4):
            for m in range(1, 4):
                dl = det_transition(pairs_a[(n, m)], "L")
                dm = det_transition(pairs_a[(n, m)], "M")
                assert dl.degree == 0 and dl.coeff(0) == 1
                assert dm.degree == 0 and dm.coeff(0) == 1

    def test_axis_dets_constant_nonzero(self, pairs_a):
        # the axis gauge keeps every transition invertible (constant det -1)
        for k in range(4):
            dl = det_transition(pairs_a[(0, k)], "L")
            dm = det_transition(pairs_a[(k, 0)], "M")
            assert dl.degree == 0 and dl.coeff(0) == -1
            assert dm.degree == 0 and dm.coeff(0) == -1

    def test_product_invariance_under_scaling(self, pairs_a):
        pair = pairs_a[(2, 2)]
        t = F(7, 3)
        scaled = (t * pair.alpha2, pair.alpha4 / t)
        assert -scaled[1] * scaled[0] == -pair.alpha4 * pair.alpha2


class TestGaugeInvariance:
    def test_n_dependent_rescale_preserves_zcc(self, pairs_a, field_a):
        # t depends only on n for the (alpha2, alpha4) pair, only on m for
        # (alpha3, alpha5); rebuild the matrices and recheck curvature
        t_n = {n: F(2 * n + 1, n + 2) for n in range(6)}
        u_m = {m: F(3 * m + 2, m + 1) for m in range(6)}

        def alpha(n, m):
            p = pairs_a[(n, m)]
            return {
                "a1": p.alpha1, "b1": p.beta1,
                "a2": p.alpha2 * t_n[n], "a4": p.alpha4 / t_n[n],
                "a3": p.alpha3 * u_m[m], "a5": p.alpha5 / u_m[m],
            }

        def l_at(n, m):
            here, right = alpha(n, m), alpha(n + 1, m)
            return assemble_l(here["a1"], here["a2"], here["a3"],
                              right["a4"], right["a5"])

        def m_at(n, m):
            here, up = alpha(n, m), alpha(n, m + 1)
            return assemble_m(here["b1"], here["a2"], here["a3"],
                              up["a4"], up["a5"])

        for n in range(3):
            for m in range(3):
                res = l_at(n, m + 1) * m_at(n, m) - m_at(n + 1, m) * l_at(n, m)
                assert res.is_zero
                rescaled = alpha(n, m)
                assert -rescaled["a4"] * rescaled["a2"] == field_a.a(n, m)
                assert -rescaled["a5"] * rescaled["a3"] == field_a.b(n, m)


@pytest.fixture(scope="module")
def series_pair(system_a):
    return (series_from_moments(system_a.s1),
            series_from_moments(system_a.s2))


class TestWaveMatrix:
    def test_origin_structure(self, table_a, series_pair):
        f1, f2 = series_pair
        wave = wave_matrix(table_a, f1, f2, 0, 0)
        assert wave.entry(0, 0)[0] == Poly.of(1)
        assert wave.entry(1, 0)[0].is_zero and wave.entry(2, 0)[0].is_zero
        assert wave.entry(1, 1)[0] == Poly.of(1)
        assert wave.entry(2, 2)[0] == Poly.of(1)
        # columns 2 and 3 of the first row carry the two input series
        assert wave.entry(0, 1)[1].coeffs[:6] == f1.coeffs[:6]
        assert wave.entry(0, 2)[1].coeffs[:6] == f2.coeffs[:6]

    def test_11_leading_polynomial(self, table_a, series_pair):
        f1, f2 = series_pair
        wave = wave_matrix(table_a, f1, f2, 1, 1)
        assert wave.entry(0, 0)[0] == X * X - Poly.of(F(7, 3))

    @pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)])
    def test_propagation_identities(self, table_a, pairs_a, series_pair, n, m):
        f1, f2 = series_pair
        here = wave_matrix(table_a, f1, f2, n, m)
        pair = pairs_a[(n, m)]
        right = wave_matrix(table_a, f1, f2, n + 1, m)
        up = wave_matrix(table_a, f1, f2, n, m + 1)
        assert waves_agree(right, propagate(pair.L, here, n + 1, m))
        assert waves_agree(up, propagate(pair.M, here, n, m + 1))


class TestPathTransport:
    def test_empty_path_is_identity(self, pairs_a):
        assert path_transport(pairs_a, []) == MatPoly.identity(3)

    def test_square_loop_at_corner(self, pairs_a):
        loop = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        assert path_transport(pairs_a, loop) == MatPoly.identity(3)

    def test_square_loops_everywhere(self, pairs_a):
        # walk to (n, m), go around the plaquette, walk back
        for n in range(3):
            for m in range(3):
                path = [(1, 0)] * n + [(0, 1)] * m
                loop = path + [(1, 0), (0, 1), (-1, 0), (0, -1)]
                loop += [(0, -1)] * m + [(-1, 0)] * n
                assert path_transport(pairs_a, loop) == MatPoly.identity(3)

    def test_two_staircases_agree(self, pairs_a):
        stair_one = path_transport(pairs_a, [(1, 0), (0, 1), (1, 0)])
        stair_two = path_transport(pairs_a, [(0, 1), (1, 0), (1, 0)])
        assert stair_one == stair_two

    def test_leaving_window_raises(self, pairs_a):
        with pytest.raises(WindowError):
            path_transport(pairs_a, [(1, 0)] * 40)
        with pytest.raises(WindowError):
            path_transport(pairs_a, [(0, -1)])

    def test_bad_step_rejected(self, pairs_a):
        with pytest.raises(WindowError):
            path_transport(pairs_a, [(1, 1)])


class TestReflectIndex:
    def test_examples(self):
        assert reflect_index(-2, 3) == (2, 3)
        assert reflect_index(0, 0) == (0, 0)
        assert reflect_index(-1, -1) == (1, 1)
