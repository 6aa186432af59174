"""The lattice boundary-value problem: anti-diagonal sweep and moment route.

The nonlinear system couples the four coefficient grids through the
denominators (c - d).  Given boundary rows along both axes, the sweep fills
one anti-diagonal level at a time: first the multiplicative a/b updates
(which only read completed levels), then the additive c/d updates (whose
brackets need a and b of the level just filled).  A vanishing (c - d) in any
needed denominator certifies that the boundary data do not come from a
perfect system; the partially filled field is kept for diagnosis.

The independent route recovers the same field from moments through the
determinant table; the two must agree grid point by grid point, exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (DegeneracyError, IntegrityError, NonPerfectBoundaryError,
                     WindowError)
from .hptable import HPTable
from .lax3 import build_transition, normalization_grid, zcc_residual
from .measures import MomentSystem
from .nnrr import (RecurrenceField, _a_value, _b_value, _c_value, _d_value,
                   consistency_residuals, field_from_table)

KINDS = ("a", "b", "c", "d")


@dataclass(frozen=True)
class BoundaryData:
    """Axis data: c and a along the n-axis, d and b along the m-axis.

    a_row[i] is the value at (i + 1, 0) and b_col[i] the value at (0, i + 1);
    the entries at the origin-adjacent axes are the zero boundary conditions
    and are never stored.
    """

    c_row: tuple[Fraction, ...]
    a_row: tuple[Fraction, ...]
    d_col: tuple[Fraction, ...]
    b_col: tuple[Fraction, ...]

    def __post_init__(self):
        for name in ("c_row", "a_row", "d_col", "b_col"):
            object.__setattr__(self, name,
                               tuple(Fraction(x) for x in getattr(self, name)))
        if any(x == 0 for x in self.a_row) or any(x == 0 for x in self.b_col):
            raise DegeneracyError(
                "boundary subdiagonal data must be nonzero for a solvable problem")

    @property
    def max_level(self) -> int:
        """Deepest anti-diagonal the data can drive."""
        return min(len(self.c_row) - 1, len(self.a_row),
                   len(self.d_col) - 1, len(self.b_col))


@dataclass(frozen=True)
class SweepReport:
    """Sweep outcome: the field, how many divisions were checked, and the
    failure location (with reason) when the data turn out non-perfect."""

    field: RecurrenceField
    divisions_checked: int
    failure: tuple[tuple[int, int], str] | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def field_or_raise(self) -> RecurrenceField:
        """The completed field, or the boundary failure as an exception."""
        if self.failure is not None:
            (n, m), reason = self.failure
            raise NonPerfectBoundaryError(n, m, reason)
        return self.field


def boundary_from_field(field: RecurrenceField, levels: int) -> BoundaryData:
    """Read boundary rows for the given maximal anti-diagonal off a field."""
    nw, mw = field.window
    if levels > nw or levels > mw:
        raise WindowError(
            f"field window {field.window} cannot provide boundary to level {levels}")
    return BoundaryData(
        c_row=tuple(field.c(n, 0) for n in range(levels + 1)),
        a_row=tuple(field.a(n, 0) for n in range(1, levels + 1)),
        d_col=tuple(field.d(0, m) for m in range(levels + 1)),
        b_col=tuple(field.b(0, m) for m in range(1, levels + 1)),
    )


def boundary_from_table(table: HPTable, levels: int) -> BoundaryData:
    """Boundary rows straight off the table axes, without building a field.

    Reaches one step past the requested level along each axis (the c and d
    values need the neighboring polynomial), nothing more.
    """
    return BoundaryData(
        c_row=tuple(_c_value(table, n, 0) for n in range(levels + 1)),
        a_row=tuple(_a_value(table, n, 0) for n in range(1, levels + 1)),
        d_col=tuple(_d_value(table, 0, m) for m in range(levels + 1)),
        b_col=tuple(_b_value(table, 0, m) for m in range(1, levels + 1)),
    )


def sweep_solve(boundary: BoundaryData, N: int, M: int) -> SweepReport:
    """Fill the four grids over the triangle of levels up to N + M and report
    the (N, M) rectangle.

    The level order makes every read refer to an already-filled cell; the
    equations for the first off-axis a and b entries are never evaluated (they
    would reference level -1 data), the axis zeros being boundary conditions.
    """
    lam = N + M
    if boundary.max_level < lam:
        raise WindowError(
            f"window ({N}, {M}) sweeps to level {lam}, boundary only "
            f"supports level {boundary.max_level}")
    a: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(0)}
    b: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(0)}
    c: dict[tuple[int, int], Fraction] = {(0, 0): boundary.c_row[0]}
    d: dict[tuple[int, int], Fraction] = {(0, 0): boundary.d_col[0]}
    divisions = 0
    failure: tuple[tuple[int, int], str] | None = None

    def gap(n: int, m: int) -> Fraction:
        return c[(n, m)] - d[(n, m)]

    def checked_gap(n: int, m: int) -> Fraction:
        nonlocal divisions
        divisions += 1
        g = gap(n, m)
        if g == 0:
            raise _GapZero((n, m))
        return g

    try:
        for level in range(1, lam + 1):
            points = [(n, level - n) for n in range(level + 1)]
            for n, m in points:                       # phase 1: a and b
                if n == 0:
                    a[(n, m)] = Fraction(0)
                elif m == 0:
                    a[(n, m)] = boundary.a_row[n - 1]
                else:
                    a[(n, m)] = a[(n, m - 1)] * gap(n, m - 1) / checked_gap(n - 1, m - 1)
                if m == 0:
                    b[(n, m)] = Fraction(0)
                elif n == 0:
                    b[(n, m)] = boundary.b_col[m - 1]
                else:
                    b[(n, m)] = b[(n - 1, m)] * gap(n - 1, m) / checked_gap(n - 1, m - 1)
            for n, m in points:                       # phase 2: c and d
                if m == 0:
                    c[(n, m)] = boundary.c_row[n]
                else:
                    bracket = (a[(n + 1, m - 1)] + b[(n + 1, m - 1)]
                               - a[(n, m)] - b[(n, m)])
                    c[(n, m)] = c[(n, m - 1)] + bracket / checked_gap(n, m - 1)
                if n == 0:
                    d[(n, m)] = boundary.d_col[m]
                else:
                    bracket = (a[(n, m)] + b[(n, m)]
                               - a[(n - 1, m + 1)] - b[(n - 1, m + 1)])
                    d[(n, m)] = d[(n - 1, m)] + bracket / checked_gap(n - 1, m)
    except _GapZero as exc:
        failure = (exc.index, f"(c - d) vanishes at {exc.index}")

    if failure is None:
        grids = {kind: {} for kind in KINDS}
        source = {"a": a, "b": b, "c": c, "d": d}
        for kind in KINDS:
            for n in range(N + 1):
                for m in range(M + 1):
                    grids[kind][(n, m)] = source[kind][(n, m)]
        return SweepReport(RecurrenceField(grids, (N, M)), divisions)
    partial = RecurrenceField({"a": a, "b": b, "c": c, "d": d}, (N, M))
    return SweepReport(partial, divisions, failure)


class _GapZero(Exception):
    def __init__(self, index: tuple[int, int]):
        self.index = index
        super().__init__(str(index))


def field_from_moments(system: MomentSystem, N: int, M: int) -> RecurrenceField:
    """Reference oracle for the sweep: the same grids via the determinant table."""
    table = HPTable(system, N + 1, M + 1)
    return field_from_table(table, N, M)


def cd_by_summation(boundary: BoundaryData, field: RecurrenceField,
                    n: int, m: int) -> tuple[Fraction, Fraction]:
    """c(n, m+1) and d(n+1, m) by telescoping the additive equations from the
    axes; must equal the stepwise sweep values."""
    c_val = boundary.c_row[n] if n < len(boundary.c_row) else None
    if c_val is None:
        raise WindowError(f"boundary c_row too short for n = {n}")
    for i in range(m + 1):
        bracket = (field.a(n + 1, i) + field.b(n + 1, i)
                   - field.a(n, i + 1) - field.b(n, i + 1))
        g = field.gap(n, i)
        if g == 0:
            raise DegeneracyError(f"(c - d) vanishes at ({n}, {i})")
        c_val += bracket / g
    d_val = boundary.d_col[m] if m < len(boundary.d_col) else None
    if d_val is None:
        raise WindowError(f"boundary d_col too short for m = {m}")
    for i in range(n + 1):
        bracket = (field.a(i + 1, m) + field.b(i + 1, m)
                   - field.a(i, m + 1) - field.b(i, m + 1))
        g = field.gap(i, m)
        if g == 0:
            raise DegeneracyError(f"(c - d) vanishes at ({i}, {m})")
        d_val += bracket / g
    return c_val, d_val


@dataclass(frozen=True)
class CrossValidation:
    """End-to-end agreement report for one moment system and window."""

    window: tuple[int, int]
    grids_equal: bool
    consistency_max: Fraction
    zcc_all_zero: bool
    orthogonality_max: Fraction
    divisions_checked: int


def cross_validate(system: MomentSystem, N: int, M: int) -> CrossValidation:
    """Moment route vs sweep route, plus the residual batteries.

    Builds the reference field, reads its boundary to level N + M (the table
    supplies the axis rows beyond the rectangle), sweeps, and asserts exact
    equality of all four grids; then checks consistency residuals and
    orthogonality over the window and the zero-curvature residual at every
    stencil it covers.  Any mismatch raises with the first differing index.
    """
    lam = N + M
    table = HPTable(system, lam + 1, lam + 1)
    reference = field_from_table(table, N, M)
    boundary = boundary_from_table(table, lam)
    report = sweep_solve(boundary, N, M)
    if not report.ok:
        index, reason = report.failure
        raise IntegrityError(
            f"sweep failed on data from a normal window: {reason} at {index}")
    equal, diff = report.field.same_grids(reference)
    if not equal:
        kind, n, m, got, want = diff
        raise IntegrityError(
            f"sweep and moment routes disagree at {kind}[{n}, {m}]: "
            f"{got} != {want}")

    cons_max = Fraction(0)
    for n in range(N):
        for m in range(M):
            for r in consistency_residuals(reference, n, m):
                cons_max = max(cons_max, abs(r))

    orth_max = Fraction(0)
    for n in range(N + 1):
        for m in range(M + 1):
            r1, r2 = table.orthogonality_residuals(n, m)
            for r in r1 + r2:
                orth_max = max(orth_max, abs(r))

    zcc_zero = True
    if N >= 1 and M >= 1:
        norms = normalization_grid(table, N, M)
        pairs = {(n, m): build_transition(reference, norms, n, m)
                 for n in range(N) for m in range(M)}
        for n in range(N - 1):
            for m in range(M - 1):
                res = zcc_residual(pairs[(n, m)], pairs[(n + 1, m)], pairs[(n, m + 1)])
                if not res.is_zero:
                    zcc_zero = False
    return CrossValidation((N, M), equal, cons_max, zcc_zero, orth_max,
                           report.divisions_checked)
