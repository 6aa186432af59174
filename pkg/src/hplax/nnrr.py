"""Nearest-neighbor recurrence field and its branched continued fractions.

The four coefficient grids come from determinant ratios (a, b) and from
subleading polynomial coefficients (c, d).  Everything here is checkable
against an independent route: determinant identities, direct recurrence
residuals, consistency identities, and series round trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegeneracyError, NotNormalError, WindowError
from .kernel import LaurentTail, Poly, X
from .hptable import HPTable

KINDS = ("a", "b", "c", "d")


class RecurrenceField:
    """Grids a, b, c, d over a rectangle of lattice indices.

    Entries may be absent (e.g. in a partially swept field); reads of absent
    entries raise WindowError rather than guessing.
    """

    def __init__(self, grids: dict[str, dict[tuple[int, int], Fraction]],
                 window: tuple[int, int]):
        if set(grids) != set(KINDS):
            raise WindowError(f"field needs grids {KINDS}, got {sorted(grids)}")
        self._grids = {k: dict(v) for k, v in grids.items()}
        self.window = window

    def has(self, kind: str, n: int, m: int) -> bool:
        return (n, m) in self._grids[kind]

    def value(self, kind: str, n: int, m: int) -> Fraction:
        try:
            return self._grids[kind][(n, m)]
        except KeyError:
            raise WindowError(f"field entry {kind}[{n}, {m}] is absent") from None

    def a(self, n: int, m: int) -> Fraction:
        return self.value("a", n, m)

    def b(self, n: int, m: int) -> Fraction:
        return self.value("b", n, m)

    def c(self, n: int, m: int) -> Fraction:
        return self.value("c", n, m)

    def d(self, n: int, m: int) -> Fraction:
        return self.value("d", n, m)

    def gap(self, n: int, m: int) -> Fraction:
        """(c - d) at an index; the recurring denominator of the lattice system."""
        return self.c(n, m) - self.d(n, m)

    def replace(self, kind: str, n: int, m: int, value) -> "RecurrenceField":
        """Copy of the field with one entry overwritten (for perturbation tests)."""
        grids = {k: dict(v) for k, v in self._grids.items()}
        grids[kind][(n, m)] = Fraction(value)
        return RecurrenceField(grids, self.window)

    def grid_items(self, kind: str):
        return self._grids[kind].items()

    def same_grids(self, other: "RecurrenceField") -> tuple[bool, tuple | None]:
        """Exact comparison on the intersection window; returns first diff."""
        nw = min(self.window[0], other.window[0])
        mw = min(self.window[1], other.window[1])
        for kind in KINDS:
            for n in range(nw + 1):
                for m in range(mw + 1):
                    va, vb = self.value(kind, n, m), other.value(kind, n, m)
                    if va != vb:
                        return False, (kind, n, m, va, vb)
        return True, None


@dataclass(frozen=True)
class CFExtraction:
    """Coefficients read off a pair of branched-continued-fraction tails."""

    c: Fraction
    d: Fraction
    f: Fraction          # a + b
    g: Fraction          # a*c_prev1 + b*d_prev2
    a: Fraction
    b: Fraction


# -- field extraction ------------------------------------------------------


def _sub(p: Poly) -> Fraction:
    """Coefficient of x^(deg - 1); zero for constants."""
    return p.coeff(p.degree - 1)


def _a_value(table: HPTable, n: int, m: int) -> Fraction:
    if n == 0:
        return Fraction(0)
    s = table.s_det(n, m)
    if s == 0:
        raise NotNormalError(n, m)
    return table.s_det(n + 1, m) * table.s_det(n - 1, m) / s ** 2


def _b_value(table: HPTable, n: int, m: int) -> Fraction:
    if m == 0:
        return Fraction(0)
    s = table.s_det(n, m)
    if s == 0:
        raise NotNormalError(n, m)
    return table.s_det(n, m + 1) * table.s_det(n, m - 1) / s ** 2


def _c_value(table: HPTable, n: int, m: int) -> Fraction:
    return _sub(table.hp_poly_det(n, m)) - _sub(table.hp_poly_det(n + 1, m))


def _d_value(table: HPTable, n: int, m: int) -> Fraction:
    return _sub(table.hp_poly_det(n, m)) - _sub(table.hp_poly_det(n, m + 1))


def field_from_table(table: HPTable, N: int, M: int) -> RecurrenceField:
    """All four grids on the (N+1) x (M+1) window; needs one normal ring more."""
    grids: dict[str, dict[tuple[int, int], Fraction]] = {k: {} for k in KINDS}
    for n in range(N + 1):
        for m in range(M + 1):
            grids["a"][(n, m)] = _a_value(table, n, m)
            grids["b"][(n, m)] = _b_value(table, n, m)
            grids["c"][(n, m)] = _c_value(table, n, m)
            grids["d"][(n, m)] = _d_value(table, n, m)
    return RecurrenceField(grids, (N, M))


def check_dminusc(field: RecurrenceField, table: HPTable, n: int, m: int) -> Fraction:
    """d - c at an index from the determinant identity (independent route)."""
    s_right, s_up = table.s_det(n + 1, m), table.s_det(n, m + 1)
    if s_right == 0 or s_up == 0:
        raise NotNormalError(n + 1 if s_right == 0 else n,
                             m if s_right == 0 else m + 1)
    return table.s_det(n, m) * table.s_det(n + 1, m + 1) / (s_right * s_up)


# -- residual checks -------------------------------------------------------


def recurrence_residuals(field: RecurrenceField, table: HPTable,
                         n: int, m: int) -> tuple[Poly, Poly]:
    """Residuals of the two lattice recurrences at (n, m); zero on valid data.

    Absent neighbors below the axes count as the zero polynomial, matching
    a(0, m) = b(n, 0) = 0.
    """
    p = table.hp_poly_det(n, m)
    p_left = table.hp_poly_det(n - 1, m) if n >= 1 else Poly()
    p_down = table.hp_poly_det(n, m - 1) if m >= 1 else Poly()
    common = field.a(n, m) * p_left + field.b(n, m) * p_down
    res1 = table.hp_poly_det(n + 1, m) - ((X - Poly.of(field.c(n, m))) * p - common)
    res2 = table.hp_poly_det(n, m + 1) - ((X - Poly.of(field.d(n, m))) * p - common)
    return res1, res2


def consistency_residuals(field: RecurrenceField, n: int,
                          m: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four lattice-compatibility identities at a stencil, denominators
    cleared; all zero exactly on a field from a perfect system.

    On the axes the ratio identities degenerate (both sides carry a zero
    coefficient), and the cleared forms vanish identically.
    """
    r1 = (field.d(n + 1, m) - field.d(n, m)) - (field.c(n, m + 1) - field.c(n, m))
    r2 = (field.b(n + 1, m) - field.b(n, m + 1)
          + field.a(n + 1, m) - field.a(n, m + 1)) \
        - (field.d(n + 1, m) * field.c(n, m) - field.d(n, m) * field.c(n, m + 1))
    gap_here = field.gap(n, m)
    gap_left = field.gap(n - 1, m) if n >= 1 else Fraction(0)
    r3 = field.a(n, m + 1) * gap_left - field.a(n, m) * gap_here
    gap_down = field.gap(n, m - 1) if m >= 1 else Fraction(0)
    r4 = field.b(n + 1, m) * gap_down - field.b(n, m) * gap_here
    return r1, r2, r3, r4


# -- branched continued fractions ------------------------------------------


def m_minus_series(table: HPTable, j: int, n: int, m: int, order: int) -> LaurentTail:
    """Laurent tail of -P(n, m)/P(n+1, m) for j = 1, or -P(n, m)/P(n, m+1)
    for j = 2, computed by recursing the branched continued fraction down to
    the origin and expanding each level.

    Matches polynomial long division of the same ratio, coefficient for
    coefficient: that is the test oracle.
    """
    if j not in (1, 2):
        raise WindowError(f"branch index must be 1 or 2, got {j}")
    if order < 1:
        raise WindowError("series order must be at least 1")
    memo: dict[tuple[int, int, int], tuple[Fraction, ...]] = {}

    def level(jj: int, nn: int, mm: int) -> tuple[Fraction, ...]:
        key = (jj, nn, mm)
        if key in memo:
            return memo[key]
        diag = _c_value(table, nn, mm) if jj == 1 else _d_value(table, nn, mm)
        branch = [Fraction(0)] * order
        if nn >= 1:
            av = _a_value(table, nn, mm)
            prev = level(1, nn - 1, mm)
            for i in range(order):
                branch[i] += av * prev[i]
        if mm >= 1:
            bv = _b_value(table, nn, mm)
            prev = level(2, nn, mm - 1)
            for i in range(order):
                branch[i] += bv * prev[i]
        # tail t of -1/(z - diag + branch): t_0 = 1,
        # t_r = diag*t_(r-1) - sum_(k<=r-2) t_k * branch_(r-2-k)
        t = [Fraction(1)]
        for r in range(1, order):
            acc = diag * t[r - 1]
            for k in range(r - 1):
                acc -= t[k] * branch[r - 2 - k]
            t.append(acc)
        out = tuple(-x for x in t)
        memo[key] = out
        return out

    try:
        return LaurentTail(level(j, n, m))
    except NotNormalError as exc:
        raise DegeneracyError(
            f"series ratio degenerate: {exc} while expanding branch {j} "
            f"at ({n}, {m})") from exc


def cf_extract(series1: LaurentTail, series2: LaurentTail,
               c_prev1, d_prev2, gap) -> CFExtraction:
    """Recover one level of recurrence data from the two branch tails.

    Reads c and d from the constant terms of -1/series - z, the sum a + b
    from the next coefficient, and the mixed sum from the one after; then
    splits a from b using the supplied previous-level values, whose
    difference (the gap) must be nonzero for unique solvability.
    """
    gap = Fraction(gap)
    if gap == 0:
        raise DegeneracyError(
            "previous-level gap (c - d) is zero: data are not from a perfect system")
    c_prev1, d_prev2 = Fraction(c_prev1), Fraction(d_prev2)

    def front(series: LaurentTail) -> tuple[Fraction, Fraction, Fraction]:
        # -1/series = z + v0 + v1/z + v2/z^2 + ...; solve by coefficient matching
        u = series.head(4)
        if u[0] == 0:
            raise DegeneracyError("series has vanishing leading coefficient")
        v_lead = -1 / u[0]
        v = []
        for r in range(1, 4):
            acc = u[r] * v_lead
            for k in range(1, r):
                acc += u[k] * v[r - 1 - k]
            v.append(-acc / u[0])
        return v[0], v[1], v[2]

    v0_1, v1_1, v2_1 = front(series1)
    v0_2, _, _ = front(series2)
    c_val, d_val = -v0_1, -v0_2
    f = -v1_1
    g = -v2_1
    a_val = (g - f * d_prev2) / gap
    b_val = f - a_val
    return CFExtraction(c_val, d_val, f, g, a_val, b_val)
