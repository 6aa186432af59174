"""Determinant table, normality tests, and the table polynomials.

Each polynomial is produced by two independent routes: a bordered-determinant
formula and a direct linear solve of the orthogonality conditions.  The two
must agree exactly at every normal index; they are each other's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (DegeneracyError, IntegrityError, NotNormalError,
                     TruncationError, WindowError)
from .kernel import (LaurentTail, Poly, det_exact, poly_from_series_product,
                     solve_exact)
from .measures import MomentSystem


@dataclass(frozen=True)
class HPTriple:
    """Table polynomial with its two numerators and remainder tails."""

    n: int
    m: int
    p: Poly
    q1: Poly
    q2: Poly
    r1: LaurentTail
    r2: LaurentTail


class HPTable:
    """Memoized grid of determinants S(n, m) and monic polynomials P(n, m).

    Each memo cell is written once and never recomputed; concurrent fills of
    distinct indices are safe because all inputs are immutable.
    """

    def __init__(self, moments: MomentSystem, max_n: int, max_m: int):
        self.moments = moments
        self.max_n = max_n
        self.max_m = max_m
        self._s: dict[tuple[int, int], Fraction] = {}
        self._p: dict[tuple[int, int], Poly] = {}

    # -- bookkeeping ------------------------------------------------------

    def _check_window(self, n: int, m: int) -> None:
        if n < 0 or m < 0 or n > self.max_n or m > self.max_m:
            raise WindowError(
                f"index ({n}, {m}) outside table window ({self.max_n}, {self.max_m})")

    def _check_depth(self, n: int, m: int, bordered: bool) -> None:
        extra = 1 if bordered else 0
        need1 = max(2 * n + m - 1 + extra, 0)
        need2 = max(n + 2 * m - 1 + extra, 0)
        have = self.moments.count
        if have < need1 or have < need2:
            raise TruncationError(
                f"index ({n}, {m}) needs {need1} moments of the first sequence and "
                f"{need2} of the second, have {have}")

    def _grid(self, n: int, m: int, rows: int) -> list[list[Fraction]]:
        s1, s2 = self.moments.s1, self.moments.s2
        return [[s1[i + j] for j in range(n)] + [s2[i + j] for j in range(m)]
                for i in range(rows)]

    # -- determinants and normality ---------------------------------------

    def s_det(self, n: int, m: int) -> Fraction:
        """Mixed Hankel-type determinant of size n + m; the empty case is 1."""
        self._check_window(n, m)
        key = (n, m)
        if key not in self._s:
            self._check_depth(n, m, bordered=False)
            self._s[key] = det_exact(self._grid(n, m, n + m))
        return self._s[key]

    def is_normal(self, n: int, m: int) -> bool:
        return self.s_det(n, m) != 0

    # -- the two polynomial routes ----------------------------------------

    def hp_poly_det(self, n: int, m: int) -> Poly:
        """Monic table polynomial via the bordered determinant, memoized."""
        self._check_window(n, m)
        key = (n, m)
        if key in self._p:
            return self._p[key]
        s = self.s_det(n, m)
        if s == 0:
            raise NotNormalError(n, m)
        self._check_depth(n, m, bordered=True)
        grid = self._grid(n, m, n + m + 1)
        size = n + m
        coeffs = []
        for i in range(size + 1):
            minor = [grid[r] for r in range(size + 1) if r != i]
            cof = det_exact(minor)
            coeffs.append(cof if (i + size) % 2 == 0 else -cof)
        poly = Poly(tuple(coeffs)) / s
        if poly.degree != size or not poly.is_monic:
            raise IntegrityError(
                f"bordered determinant at ({n}, {m}) is not monic of degree {size}")
        self._p[key] = poly
        return poly

    def hp_poly_solve(self, n: int, m: int) -> Poly:
        """Monic table polynomial via the orthogonality linear system.

        Independent of the determinant route; the two must agree exactly.
        """
        self._check_window(n, m)
        if self.s_det(n, m) == 0:
            raise NotNormalError(n, m)
        self._check_depth(n, m, bordered=True)
        size = n + m
        if size == 0:
            return Poly.of(1)
        s1, s2 = self.moments.s1, self.moments.s2
        rows, rhs = [], []
        for seq, count in ((s1, n), (s2, m)):
            for k in range(count):
                rows.append([seq[k + i] for i in range(size)])
                rhs.append(-seq[k + size])
        try:
            sol = solve_exact(rows, rhs)
        except DegeneracyError as exc:  # singular at a normal index: impossible
            raise IntegrityError(
                f"orthogonality system singular at normal index ({n}, {m})") from exc
        return Poly(tuple(sol) + (Fraction(1),))

    # -- remainders and orthogonality --------------------------------------

    def hp_remainder(self, f1: LaurentTail, f2: LaurentTail, n: int, m: int) -> HPTriple:
        """Split f_j * P into numerator and remainder; enforce the order condition."""
        need = n + m + max(n, m) + 2
        for j, f in ((1, f1), (2, f2)):
            if f.truncation_order < need:
                raise TruncationError(
                    f"remainder at ({n}, {m}) needs series order {need}, "
                    f"f{j} has {f.truncation_order}")
        p = self.hp_poly_det(n, m)
        q1, r1 = poly_from_series_product(f1, p)
        q2, r2 = poly_from_series_product(f2, p)
        for j, (r, order) in enumerate(((r1, n), (r2, m)), start=1):
            for t in range(order):
                if r.coeff(t) != 0:
                    raise IntegrityError(
                        f"remainder order condition fails at ({n}, {m}): "
                        f"coefficient z^-{t + 1} of R{j} is {r.coeff(t)}")
        return HPTriple(n, m, p, q1, q2, r1, r2)

    def orthogonality_residuals(self, n: int, m: int) -> tuple[list[Fraction], list[Fraction]]:
        """Pairings of P(n, m) with the first monomials; all must vanish."""
        p = self.hp_poly_det(n, m)
        out = []
        for seq, count in ((self.moments.s1, n), (self.moments.s2, m)):
            res = []
            for k in range(count):
                res.append(sum((p.coeff(i) * seq[k + i] for i in range(p.degree + 1)),
                               Fraction(0)))
            out.append(res)
        return out[0], out[1]
