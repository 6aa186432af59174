"""3x3 transition matrices, zero-curvature residuals, and wave propagation.

The degree-1 matrices are assembled from the recurrence field plus two grids
of normalizing pairings (h1, h2).  The individual matrix entries are gauge
data: only the products reproducing a and b are pinned, and the gauge used
here is the one under which the wave matrices propagate exactly.  On the
lattice axes the normalization index would step below zero; there the gauge
entries collapse to (alpha2, alpha4) = (-h1(0, m), 0) and
(alpha3, alpha5) = (-h2(n, 0), 0), which keeps a(0, m) = b(n, 0) = 0, keeps
every transition matrix invertible with constant determinant, and keeps the
propagation identities exact on the whole quarter lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import IntegrityError, WindowError
from .kernel import LaurentTail, MatPoly, Poly, X, poly_from_series_product
from .hptable import HPTable
from .nnrr import RecurrenceField


class NormalizationGrid:
    """Grids of the leading orthogonality pairings h1, h2 over a window."""

    def __init__(self, h1: dict[tuple[int, int], Fraction],
                 h2: dict[tuple[int, int], Fraction], window: tuple[int, int]):
        self._h1 = dict(h1)
        self._h2 = dict(h2)
        self.window = window

    def h1(self, n: int, m: int) -> Fraction:
        try:
            return self._h1[(n, m)]
        except KeyError:
            raise WindowError(f"h1[{n}, {m}] outside normalization window") from None

    def h2(self, n: int, m: int) -> Fraction:
        try:
            return self._h2[(n, m)]
        except KeyError:
            raise WindowError(f"h2[{n}, {m}] outside normalization window") from None


@dataclass(frozen=True)
class TransitionPair:
    """The two transition matrices at a lattice index with their gauge entries."""

    n: int
    m: int
    L: MatPoly
    M: MatPoly
    alpha1: Fraction
    beta1: Fraction
    alpha2: Fraction
    alpha3: Fraction
    alpha4: Fraction
    alpha5: Fraction


@dataclass(frozen=True)
class WaveMatrix:
    """3x3 matrix whose entries are (polynomial part, Laurent tail) pairs."""

    n: int
    m: int
    entries: tuple[tuple[tuple[Poly, LaurentTail], ...], ...]

    def entry(self, i: int, j: int) -> tuple[Poly, LaurentTail]:
        return self.entries[i][j]


def _pairing(table: HPTable, which: int, n: int, m: int) -> Fraction:
    """h1 (which=1) or h2 (which=2): pairing of P(n, m) with x^n resp. x^m."""
    p = table.hp_poly_det(n, m)
    seq = table.moments.sequence(which)
    shift = n if which == 1 else m
    if shift + p.degree >= len(seq):
        raise WindowError(
            f"pairing at ({n}, {m}) needs moment index {shift + p.degree}, "
            f"have {len(seq)}")
    return sum((p.coeff(i) * seq[shift + i] for i in range(p.degree + 1)), Fraction(0))


def normalization_grid(table: HPTable, N: int, M: int) -> NormalizationGrid:
    """Both pairing grids over the (N+1) x (M+1) window; zero pairings at a
    normal index signal corruption and are rejected."""
    h1, h2 = {}, {}
    for n in range(N + 1):
        for m in range(M + 1):
            v1 = _pairing(table, 1, n, m)
            v2 = _pairing(table, 2, n, m)
            if v1 == 0 or v2 == 0:
                raise IntegrityError(
                    f"normalizing pairing vanishes at normal index ({n}, {m})")
            h1[(n, m)] = v1
            h2[(n, m)] = v2
    return NormalizationGrid(h1, h2, (N, M))


# -- gauge entries -----------------------------------------------------------


def _alpha4(norms: NormalizationGrid, n: int, m: int) -> Fraction:
    return Fraction(0) if n == 0 else Fraction(-1) / norms.h1(n - 1, m)


def _alpha5(norms: NormalizationGrid, n: int, m: int) -> Fraction:
    return Fraction(0) if m == 0 else Fraction(-1) / norms.h2(n, m - 1)


def _alpha2(field: RecurrenceField, norms: NormalizationGrid,
            n: int, m: int) -> Fraction:
    """alpha2 at an index; axis convention at n = 0."""
    if n == 0:
        return -norms.h1(0, m)
    return field.a(n, m) * norms.h1(n - 1, m)


def _alpha3(field: RecurrenceField, norms: NormalizationGrid,
            n: int, m: int) -> Fraction:
    """alpha3 at an index; axis convention at m = 0."""
    if m == 0:
        return -norms.h2(n, 0)
    return field.b(n, m) * norms.h2(n, m - 1)


def assemble_l(alpha1, alpha2, alpha3, alpha4_next, alpha5_next) -> MatPoly:
    """L-shaped degree-1 matrix from its five gauge entries."""
    return MatPoly((
        (X + Poly.of(alpha1), Poly.of(alpha2), Poly.of(alpha3)),
        (Poly.of(alpha4_next), Poly(), Poly()),
        (Poly.of(alpha5_next), Poly(), Poly.of(1)),
    ))


def assemble_m(beta1, alpha2, alpha3, alpha4_up, alpha5_up) -> MatPoly:
    """M-shaped degree-1 matrix from its five gauge entries."""
    return MatPoly((
        (X + Poly.of(beta1), Poly.of(alpha2), Poly.of(alpha3)),
        (Poly.of(alpha4_up), Poly.of(1), Poly()),
        (Poly.of(alpha5_up), Poly(), Poly()),
    ))


def build_transition(field: RecurrenceField, norms: NormalizationGrid,
                     n: int, m: int) -> TransitionPair:
    """Transition pair at (n, m); the row-2/row-3 entries of L and M live at
    the shifted indices (n+1, m) and (n, m+1)."""
    alpha1 = -field.c(n, m)
    beta1 = -field.d(n, m)
    alpha2 = _alpha2(field, norms, n, m)
    alpha3 = _alpha3(field, norms, n, m)
    alpha4 = _alpha4(norms, n, m)
    alpha5 = _alpha5(norms, n, m)
    alpha4_next = _alpha4(norms, n + 1, m)
    alpha5_next = _alpha5(norms, n + 1, m)
    alpha4_up = _alpha4(norms, n, m + 1)
    alpha5_up = _alpha5(norms, n, m + 1)
    return TransitionPair(
        n, m,
        L=assemble_l(alpha1, alpha2, alpha3, alpha4_next, alpha5_next),
        M=assemble_m(beta1, alpha2, alpha3, alpha4_up, alpha5_up),
        alpha1=alpha1, beta1=beta1, alpha2=alpha2, alpha3=alpha3,
        alpha4=alpha4, alpha5=alpha5)


def zcc_residual(pair_nm: TransitionPair, pair_right: TransitionPair,
                 pair_up: TransitionPair) -> MatPoly:
    """L(n, m+1) M(n, m) - M(n+1, m) L(n, m); identically zero on valid data.

    A nonzero residual is a report, not an exception.
    """
    return pair_up.L * pair_nm.M - pair_right.M * pair_nm.L


def det_transition(pair: TransitionPair, which: str) -> Poly:
    """Determinant of L or M as a polynomial; x-independent on valid data."""
    if which not in ("L", "M"):
        raise WindowError(f"which must be 'L' or 'M', got {which!r}")
    return (pair.L if which == "L" else pair.M).det()


# -- wave matrices -----------------------------------------------------------


def wave_matrix(table: HPTable, f1: LaurentTail, f2: LaurentTail,
                n: int, m: int) -> WaveMatrix:
    """Wave matrix at (n, m): row 1 carries P(n, m) and its two remainder
    tails; rows 2 and 3 carry the shifted polynomials scaled by -1/h, with
    constant rows (0, 1, 0) and (0, 0, 1) on the axes."""

    # structural zeros (polynomial slots, constant rows) are zero to every
    # order; give them the validity of the weakest genuine tail in the matrix
    zero_order = min(f1.truncation_order, f2.truncation_order) - (n + m)
    if zero_order < 0:
        raise WindowError(
            f"series order too small for the wave matrix at ({n}, {m})")
    zeros = LaurentTail.zeros(zero_order)

    def data_row(nn: int, mm: int, scale: Fraction):
        p = table.hp_poly_det(nn, mm)
        _, r1 = poly_from_series_product(f1, p)
        _, r2 = poly_from_series_product(f2, p)
        return ((scale * p, zeros), (Poly(), scale * r1), (Poly(), scale * r2))

    rows = [data_row(n, m, Fraction(1))]
    if n == 0:
        rows.append(((Poly(), zeros), (Poly.of(1), zeros), (Poly(), zeros)))
    else:
        rows.append(data_row(n - 1, m, -1 / _pairing(table, 1, n - 1, m)))
    if m == 0:
        rows.append(((Poly(), zeros), (Poly(), zeros), (Poly.of(1), zeros)))
    else:
        rows.append(data_row(n, m - 1, -1 / _pairing(table, 2, n, m - 1)))
    return WaveMatrix(n, m, tuple(rows))


def propagate(mat: MatPoly, wave: WaveMatrix, n: int, m: int) -> WaveMatrix:
    """Left-multiply a wave matrix by a degree-1 transition matrix.

    Polynomial-times-tail products route their emerging polynomial part into
    the polynomial slot, so the result is again a (Poly, tail) matrix; tails
    shrink by the degree of the multiplier.
    """
    if mat.dim != 3:
        raise WindowError("wave propagation needs a 3x3 transition matrix")
    out = []
    for i in range(3):
        row = []
        for jj in range(3):
            acc_p, acc_t = Poly(), None
            for k in range(3):
                lp = mat.entry(i, k)
                qp, tp = wave.entry(k, jj)
                acc_p = acc_p + lp * qp
                extra, shifted = poly_from_series_product(tp, lp)
                acc_p = acc_p + extra
                acc_t = shifted if acc_t is None else acc_t + shifted
            row.append((acc_p, acc_t))
        out.append(tuple(row))
    return WaveMatrix(n, m, tuple(out))


def waves_agree(w1: WaveMatrix, w2: WaveMatrix) -> bool:
    """Entrywise equality of polynomial parts and tails to shared validity."""
    for i in range(3):
        for j in range(3):
            p1, t1 = w1.entry(i, j)
            p2, t2 = w2.entry(i, j)
            if p1 != p2:
                return False
            k = min(t1.truncation_order, t2.truncation_order)
            if t1.head(k) != t2.head(k):
                return False
    return True


# -- transport ---------------------------------------------------------------

STEPS = {(1, 0), (-1, 0), (0, 1), (0, -1)}


def path_transport(pairs: Mapping[tuple[int, int], TransitionPair],
                   path: Sequence[tuple[int, int]]) -> MatPoly:
    """Ordered product of transition matrices along a lattice path from the
    origin; backward steps use the exact inverse (adjugate over the constant
    determinant)."""
    pos = (0, 0)
    total = MatPoly.identity(3)
    for step in path:
        if tuple(step) not in STEPS:
            raise WindowError(f"path step must be a unit move, got {step}")
        dn, dm = step
        if dn == 1:
            src = pos
            factor = _pair_at(pairs, src).L
        elif dn == -1:
            src = (pos[0] - 1, pos[1])
            factor = _pair_at(pairs, src).L.inverse()
        elif dm == 1:
            src = pos
            factor = _pair_at(pairs, src).M
        else:
            src = (pos[0], pos[1] - 1)
            factor = _pair_at(pairs, src).M.inverse()
        total = factor * total
        pos = (pos[0] + dn, pos[1] + dm)
        if pos[0] < 0 or pos[1] < 0:
            raise WindowError(f"path leaves the quarter lattice at {pos}")
    return total


def _pair_at(pairs: Mapping[tuple[int, int], TransitionPair],
             key: tuple[int, int]) -> TransitionPair:
    try:
        return pairs[key]
    except KeyError:
        raise WindowError(f"no transition pair at {key}; path leaves the window") from None


def reflect_index(n: int, m: int) -> tuple[int, int]:
    """First-quadrant representative for wave-function lookups on the full
    lattice; the wave field is symmetric under sign flips of either index."""
    return abs(n), abs(m)
