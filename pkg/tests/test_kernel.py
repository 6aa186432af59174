from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hplax.errors import (DegeneracyError, DimensionError, IntegrityError,
                          TruncationError)
from hplax.kernel import (LaurentTail, MatPoly, Poly, X, det_exact,
                          poly_divmod, poly_from_series_product, poly_gcd,
                          series_from_moments, series_of_ratio, solve_exact)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)


def brute_det(rows):
    """Permutation-expansion oracle, independent of the elimination path."""
    n = len(rows)
    if n == 0:
        return F(1)
    total = F(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = F(1)
        for i in range(n):
            prod *= F(rows[i][perm[i]])
        total += -prod if inv % 2 else prod
    return total


class TestDetExact:
    def test_identity_2x2(self):
        assert det_exact([[1, 0], [0, 1]]) == 1

    def test_hand_cofactor(self):
        # 1*(1/3) - (1/2)*(1/2) = 1/12
        assert det_exact([[1, F(1, 2)], [F(1, 2), F(1, 3)]]) == F(1, 12)

    def test_angelesco_s11(self):
        # 1*(3/2) - 1*(-3/2) = 3
        assert det_exact([[1, 1], [F(-3, 2), F(3, 2)]]) == 3

    def test_empty_is_one(self):
        assert det_exact([]) == 1

    def test_non_square(self):
        with pytest.raises(DimensionError):
            det_exact([[1, 2, 3], [4, 5, 6]])

    def test_zero_pivot_needs_swap(self):
        assert det_exact([[0, 1], [1, 0]]) == -1
        assert det_exact([[0, 0], [1, 1]]) == 0

    @settings(max_examples=120, deadline=None)
    @given(st.integers(0, 4).flatmap(
        lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n),
                           min_size=n, max_size=n)))
    def test_matches_bruteforce(self, rows):
        assert det_exact(rows) == brute_det(rows)


class TestSolveExact:
    def test_small_system(self):
        sol = solve_exact([[1, 1], [1, -1]], [1, 0])
        assert sol == [F(1, 2), F(1, 2)]

    def test_singular(self):
        with pytest.raises(DegeneracyError):
            solve_exact([[1, 1], [2, 2]], [1, 2])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.lists(rationals, min_size=n, max_size=n),
                     min_size=n, max_size=n),
            st.lists(rationals, min_size=n, max_size=n))))
    def test_solution_satisfies_system(self, case):
        rows, rhs = case
        if det_exact(rows) == 0:
            with pytest.raises(DegeneracyError):
                solve_exact(rows, rhs)
            return
        sol = solve_exact(rows, rhs)
        for row, want in zip(rows, rhs):
            assert sum(F(c) * v for c, v in zip(row, sol)) == want


class TestRatArithmetic:
    @settings(max_examples=200, deadline=None)
    @given(rationals, rationals)
    def test_add_then_subtract_is_identity(self, x, y):
        assert (x + y) - y == x


class TestPoly:
    def test_trim_and_degree(self):
        assert Poly.of(1, 2, 0, 0).coeffs == (1, 2)
        assert Poly.of().degree == -1
        assert Poly.of(5).degree == 0
        assert (X * X - X * X).is_zero

    def test_arithmetic(self):
        p = X * X - Poly.of(F(7, 3))
        assert p.coeff(2) == 1 and p.coeff(0) == F(-7, 3) and p.coeff(1) == 0
        assert p.evaluate(2) == 4 - F(7, 3)
        assert (p - p).is_zero
        assert (F(3) * Poly.of(1, 1)).coeffs == (3, 3)

    def test_divmod_gcd(self):
        a = (X - Poly.of(1)) * (X - Poly.of(2))
        b = X - Poly.of(1)
        q, r = poly_divmod(a, b)
        assert r.is_zero and q == X - Poly.of(2)
        assert poly_gcd(a, b) == b
        assert poly_gcd(a, X - Poly.of(3)).degree == 0

    @settings(max_examples=80, deadline=None)
    @given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5),
           st.lists(rationals, max_size=5))
    def test_mul_distributes(self, a, b, c):
        pa, pb, pc = Poly(tuple(a)), Poly(tuple(b)), Poly(tuple(c))
        assert pa * (pb + pc) == pa * pb + pa * pc


class TestLaurentTail:
    def test_from_moments_examples(self):
        assert series_from_moments([]).truncation_order == 0
        one = series_from_moments([1])
        assert one.truncation_order == 1 and one.coeff(0) == 1
        # moments of Lebesgue on [-2, -1] by monomial integration
        t = series_from_moments([1, F(-3, 2), F(7, 3)])
        assert t.coeffs == (1, F(-3, 2), F(7, 3))

    def test_reads_past_validity_fail(self):
        t = series_from_moments([1, 2])
        with pytest.raises(TruncationError):
            t.coeff(2)
        with pytest.raises(TruncationError):
            t.head(3)

    def test_add_respects_shortest_operand(self):
        a = LaurentTail.of(1, 2, 3)
        b = LaurentTail.of(1, 1)
        assert (a + b).truncation_order == 2


class TestSeriesPolyProduct:
    def test_one_over_z_times_x(self):
        f = series_from_moments([1])
        q, r = poly_from_series_product(f, X)
        assert q == Poly.of(1)
        assert r.truncation_order == 0

    def test_multiply_by_one(self):
        f = series_from_moments([1, F(1, 2)])
        q, r = poly_from_series_product(f, Poly.of(1))
        assert q.is_zero and r == f

    def test_lebesgue_01_times_x_minus_half(self):
        f = series_from_moments([1, F(1, 2), F(1, 3), F(1, 4)])
        q, r = poly_from_series_product(f, X - Poly.of(F(1, 2)))
        assert q == Poly.of(1)
        assert r.coeff(0) == 0 and r.coeff(1) == F(1, 12)
        assert r.truncation_order == 3

    def test_insufficient_truncation(self):
        f = series_from_moments([1])
        with pytest.raises(TruncationError):
            poly_from_series_product(f, X * X)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(rationals, min_size=8, max_size=10),
           st.lists(rationals, min_size=1, max_size=3),
           st.lists(rationals, min_size=1, max_size=3))
    def test_product_composes(self, coeffs, pa, pb):
        f = series_from_moments(coeffs)
        p, q = Poly(tuple(pa)), Poly(tuple(pb))
        q_joint, r_joint = poly_from_series_product(f, p * q)
        q1, r1 = poly_from_series_product(f, p)
        # feed the remainder through the second factor and recombine
        q2a, r2 = poly_from_series_product(r1, q)
        recombined_poly = q1 * q + q2a
        k = min(r_joint.truncation_order, r2.truncation_order)
        assert q_joint == recombined_poly
        assert r_joint.head(k) == r2.head(k)


class TestSeriesOfRatio:
    def test_geometric(self):
        # 1/(x - 1) = 1/x + 1/x^2 + ...
        t = series_of_ratio(Poly.of(1), X - Poly.of(1), 4)
        assert t.coeffs == (1, 1, 1, 1)

    def test_remultiply(self):
        num = Poly.of(2, 1)
        den = Poly.of(-1, 3, 1)
        t = series_of_ratio(num, den, 8)
        # den * t must reproduce num up to the valid window
        q, r = poly_from_series_product(LaurentTail(t.coeffs), den)
        assert q == num
        assert all(c == 0 for c in r.head(r.truncation_order - 1))

    def test_rejects_improper_ratio(self):
        with pytest.raises(DimensionError):
            series_of_ratio(X * X, X, 3)
        with pytest.raises(DegeneracyError):
            series_of_ratio(Poly.of(1), Poly(), 3)


class TestMatPoly:
    def test_identity_and_mul(self):
        eye = MatPoly.identity(3)
        m = MatPoly(((X, Poly.of(1), Poly()),
                     (Poly(), Poly.of(1), X),
                     (Poly.of(2), Poly(), X + Poly.of(1))))
        assert eye * m == m and m * eye == m

    def test_det_and_adjugate(self):
        m = MatPoly(((X, Poly.of(1)), (Poly.of(-1), X)))
        assert m.det() == X * X + Poly.of(1)
        adj = m.adjugate()
        prod = m * adj
        assert prod.entry(0, 0) == m.det() and prod.entry(0, 1).is_zero

    def test_inverse_constant_det(self):
        m = MatPoly(((X, Poly.of(1)), (Poly.of(-1), Poly())))
        assert m.det() == Poly.of(1)
        assert m.inverse() * m == MatPoly.identity(2)

    def test_inverse_rejects_nonconstant_det(self):
        m = MatPoly(((X, Poly()), (Poly(), Poly.of(1))))
        with pytest.raises(IntegrityError):
            m.inverse()
        singular = MatPoly(((X, X), (X, X)))
        with pytest.raises(DegeneracyError):
            singular.inverse()

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            MatPoly(((X,), (X, X)))
