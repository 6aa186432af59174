"""Exact arithmetic substrate.

Scalars are arbitrary-precision rationals (``fractions.Fraction``, re-exported
as ``Rat``).  On top of them sit dense polynomials, truncated Laurent tails at
infinity, and small square matrices of polynomials.  Every value is immutable
after construction and safe to share between tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import DegeneracyError, DimensionError, IntegrityError, TruncationError

#: Exact rational scalar type.  Stored in lowest terms with positive
#: denominator; equality is canonical-form equality.  The stdlib type already
#: guarantees all of that.
Rat = Fraction

Ratlike = Union[Fraction, int, str]


def rat(x: Ratlike) -> Fraction:
    """Coerce an int, a ``p/q`` string, or a Fraction to an exact rational."""
    return x if isinstance(x, Fraction) else Fraction(x)


def _coerced(coeffs: Iterable[Ratlike]) -> tuple[Fraction, ...]:
    return tuple(rat(c) for c in coeffs)


def _trimmed(coeffs: Iterable[Ratlike]) -> tuple[Fraction, ...]:
    out = list(_coerced(coeffs))
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients by ascending power of x.

    The zero polynomial is the empty tuple; no trailing zero coefficient is
    ever stored, so ``degree == len(coeffs) - 1`` always holds.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trimmed(self.coeffs))

    @staticmethod
    def of(*coeffs: Ratlike) -> "Poly":
        return Poly(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def evaluate(self, t: Ratlike) -> Fraction:
        t = rat(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly | Ratlike") -> "Poly":
        if not isinstance(other, Poly):
            c = rat(other)
            return Poly(tuple(c * a for a in self.coeffs))
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, scalar: Ratlike) -> "Poly":
        c = rat(scalar)
        if c == 0:
            raise ZeroDivisionError("division of polynomial by zero scalar")
        return self * (1 / c)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else str(mag)
            xpow = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            term = body + ("*" if body and xpow else "") + xpow
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)


#: The monomial x, handy for assembling degree-1 matrix entries.
X = Poly.of(0, 1)


@dataclass(frozen=True)
class LaurentTail:
    """Truncated Laurent series at infinity: entry k is the coefficient of
    z^(-k-1).  The number of stored entries is the truncation order; trailing
    zeros are significant and kept.  Any read past the stored window raises
    instead of guessing.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _coerced(self.coeffs))

    @staticmethod
    def of(*coeffs: Ratlike) -> "LaurentTail":
        return LaurentTail(coeffs)

    @staticmethod
    def zeros(order: int) -> "LaurentTail":
        return LaurentTail((Fraction(0),) * order)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coeff(self, k: int) -> Fraction:
        if k < 0:
            raise DimensionError("Laurent tail has no nonnegative powers")
        if k >= len(self.coeffs):
            raise TruncationError(
                f"coefficient of z^-{k + 1} requested, but only "
                f"{len(self.coeffs)} coefficients are valid"
            )
        return self.coeffs[k]

    def head(self, count: int) -> tuple[Fraction, ...]:
        if count > len(self.coeffs):
            raise TruncationError(
                f"{count} coefficients requested, only {len(self.coeffs)} valid"
            )
        return self.coeffs[:count]

    def truncate(self, order: int) -> "LaurentTail":
        return LaurentTail(self.head(min(order, len(self.coeffs))))

    def __add__(self, other: "LaurentTail") -> "LaurentTail":
        n = min(len(self.coeffs), len(other.coeffs))
        return LaurentTail(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __sub__(self, other: "LaurentTail") -> "LaurentTail":
        return self + (-other)

    def __neg__(self) -> "LaurentTail":
        return LaurentTail(tuple(-c for c in self.coeffs))

    def __mul__(self, scalar: Ratlike) -> "LaurentTail":
        c = rat(scalar)
        return LaurentTail(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.coeffs:
            return "O(empty)"
        terms = " + ".join(f"({c})/z^{k + 1}" for k, c in enumerate(self.coeffs) if c != 0)
        return (terms or "0") + f" + O(z^-{len(self.coeffs) + 1})"


@dataclass(frozen=True)
class MatPoly:
    """Square matrix of polynomials (dimension 2 or 3 in practice)."""

    rows: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix polynomial must be square")
        if any(not isinstance(e, Poly) for r in rows for e in r):
            raise DimensionError("matrix entries must be Poly")
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def identity(dim: int) -> "MatPoly":
        one, zero = Poly.of(1), Poly()
        return MatPoly(tuple(tuple(one if i == j else zero for j in range(dim))
                             for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for r in self.rows for e in r)

    def max_degree(self) -> int:
        return max((e.degree for r in self.rows for e in r), default=-1)

    def __mul__(self, other: "MatPoly") -> "MatPoly":
        if self.dim != other.dim:
            raise DimensionError("matrix dimensions differ")
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Poly()
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(tuple(row))
        return MatPoly(tuple(out))

    def __add__(self, other: "MatPoly") -> "MatPoly":
        if self.dim != other.dim:
            raise DimensionError("matrix dimensions differ")
        return MatPoly(tuple(tuple(a + b for a, b in zip(ra, rb))
                             for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        if self.dim != other.dim:
            raise DimensionError("matrix dimensions differ")
        return MatPoly(tuple(tuple(a - b for a, b in zip(ra, rb))
                             for ra, rb in zip(self.rows, other.rows)))

    def scale(self, c: Ratlike) -> "MatPoly":
        return MatPoly(tuple(tuple(e * c for e in r) for r in self.rows))

    def det(self) -> Poly:
        n = self.dim
        if n == 1:
            return self.rows[0][0]
        acc = Poly()
        for j in range(n):
            minor = MatPoly(tuple(tuple(r[k] for k in range(n) if k != j)
                                  for r in self.rows[1:]))
            term = self.rows[0][j] * minor.det()
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    def adjugate(self) -> "MatPoly":
        n = self.dim
        if n == 1:
            return MatPoly(((Poly.of(1),),))
        cof = [[Poly()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = MatPoly(tuple(
                    tuple(self.rows[r][k] for k in range(n) if k != j)
                    for r in range(n) if r != i))
                d = minor.det()
                cof[j][i] = d if (i + j) % 2 == 0 else -d
        return MatPoly(tuple(tuple(r) for r in cof))

    def inverse(self) -> "MatPoly":
        """Exact inverse; requires the determinant to be a nonzero constant."""
        d = self.det()
        if d.is_zero:
            raise DegeneracyError("matrix polynomial is singular")
        if d.degree > 0:
            raise IntegrityError(
                "determinant is not x-independent; inverse is not polynomial")
        return self.adjugate().scale(1 / d.coeff(0))


def det_exact(rows: Sequence[Sequence[Ratlike]]) -> Fraction:
    """Exact determinant of a square grid of rationals.

    Denominators are cleared row by row, then fraction-free Bareiss
    elimination runs over plain integers (every interior division is exact),
    which sidesteps both float ill-conditioning and rational blow-up.  The
    0x0 determinant is 1 by convention.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    grid = [[rat(x) for x in row] for row in rows]
    if any(len(row) != n for row in grid):
        raise DimensionError(f"determinant needs a square grid, got {n} rows "
                             f"of lengths {[len(r) for r in grid]}")
    scale = 1
    m: list[list[int]] = []
    for row in grid:
        mult = 1
        for x in row:
            mult = lcm(mult, x.denominator)
        scale *= mult
        m.append([int(x * mult) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], scale)


def solve_exact(a: Sequence[Sequence[Ratlike]], b: Sequence[Ratlike]) -> list[Fraction]:
    """Solve a small square linear system exactly by Gaussian elimination."""
    n = len(a)
    if len(b) != n or any(len(row) != n for row in a):
        raise DimensionError("solve_exact needs a square system")
    m = [[rat(x) for x in row] + [rat(b[i])] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise DegeneracyError(f"singular linear system (column {col})")
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / m[col][col]
                for j in range(col, n + 1):
                    m[r][j] -= f * m[col][j]
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n]
        for j in range(i + 1, n):
            acc -= m[i][j] * out[j]
        out[i] = acc / m[i][i]
    return out


def series_from_moments(moments: Sequence[Ratlike]) -> LaurentTail:
    """Tail with coefficient of z^(-k-1) equal to the k-th moment."""
    return LaurentTail(tuple(rat(s) for s in moments))


def poly_from_series_product(f: LaurentTail, p: Poly) -> tuple[Poly, LaurentTail]:
    """Split the formal product f(z) * p(z) into polynomial part and tail.

    The tail keeps f.truncation_order - deg(p) valid coefficients; asking for
    a product with fewer than zero valid tail coefficients raises.
    """
    if p.is_zero:
        return Poly(), LaurentTail.zeros(f.truncation_order)
    d = p.degree
    if f.truncation_order < d:
        raise TruncationError(
            f"series valid to order {f.truncation_order} cannot absorb a "
            f"degree-{d} polynomial factor")
    poly_part = [Fraction(0)] * d
    for i in range(1, d + 1):
        pi = p.coeff(i)
        if pi == 0:
            continue
        for k in range(i):
            poly_part[i - 1 - k] += pi * f.coeffs[k]
    tail_len = f.truncation_order - d
    tail = [Fraction(0)] * tail_len
    for t in range(tail_len):
        acc = Fraction(0)
        for i in range(d + 1):
            acc += p.coeff(i) * f.coeffs[i + t]
        tail[t] = acc
    return Poly(tuple(poly_part)), LaurentTail(tuple(tail))


def series_of_ratio(num: Poly, den: Poly, order: int) -> LaurentTail:
    """Laurent expansion at infinity of num/den, to the requested order.

    Plain long division in powers of 1/z; requires deg(num) < deg(den) so the
    ratio is O(1/z).
    """
    if den.is_zero:
        raise DegeneracyError("division by the zero polynomial")
    if num.degree >= den.degree:
        raise DimensionError("series_of_ratio expects deg(num) < deg(den)")
    dd = den.degree
    lead = den.leading
    out: list[Fraction] = []
    for r in range(order):
        acc = num.coeff(dd - 1 - r)
        for k in range(r):
            acc -= den.coeff(dd - r + k) * out[k]
        out.append(acc / lead)
    return LaurentTail(tuple(out))


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Exact polynomial division with remainder."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q: dict[int, Fraction] = {}
    rem = list(num.coeffs)
    dd, lead = den.degree, den.leading
    while len(rem) - 1 >= dd and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dd:
            break
        k = len(rem) - 1 - dd
        factor = rem[-1] / lead
        q[k] = factor
        for i in range(dd + 1):
            rem[k + i] -= factor * den.coeff(i)
    qc = [Fraction(0)] * (max(q) + 1 if q else 0)
    for k, v in q.items():
        qc[k] = v
    return Poly(tuple(qc)), Poly(tuple(rem))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a / a.leading
