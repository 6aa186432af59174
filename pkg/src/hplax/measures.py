"""Measure models and exact moment machinery.

Moments are always exact rationals, which restricts the admissible measures
to finite atom sets and Lebesgue measure on rational intervals.  The Cauchy
transform convention is fixed throughout the library:

    g(z) = integral of d(mu)(x) / (z - x) = sum_k s_k z^(-k-1),  s_0 = |mu| > 0,

with the J-fraction  g ~ 1/(z - c_0 - a_1/(z - c_1 - ...)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (DegeneracyError, DisjointSupportError, PoleError,
                     TruncationError)
from .kernel import Poly, Ratlike, rat

DISCRETE = "discrete"
INTERVAL = "interval"


@dataclass(frozen=True)
class MeasureModel:
    """A finite atomic measure or Lebesgue measure on a rational interval."""

    kind: str
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()
    lo: Fraction | None = None
    hi: Fraction | None = None

    @staticmethod
    def discrete(atoms) -> "MeasureModel":
        pts = tuple((rat(t), rat(w)) for t, w in atoms)
        nodes = [t for t, _ in pts]
        if len(set(nodes)) != len(nodes):
            raise DegeneracyError("discrete measure nodes must be pairwise distinct")
        return MeasureModel(DISCRETE, atoms=pts)

    @staticmethod
    def interval(lo: Ratlike, hi: Ratlike) -> "MeasureModel":
        lo, hi = rat(lo), rat(hi)
        if not lo < hi:
            raise DegeneracyError(f"interval needs lo < hi, got [{lo}, {hi}]")
        return MeasureModel(INTERVAL, lo=lo, hi=hi)

    def support_bounds(self) -> tuple[Fraction, Fraction]:
        if self.kind == INTERVAL:
            return self.lo, self.hi
        nodes = [t for t, _ in self.atoms]
        if not nodes:
            raise DegeneracyError("empty atomic measure has no support")
        return min(nodes), max(nodes)


@dataclass(frozen=True)
class MomentSystem:
    """Two exact moment sequences of a common truncation order."""

    s1: tuple[Fraction, ...]
    s2: tuple[Fraction, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "s1", tuple(rat(x) for x in self.s1))
        object.__setattr__(self, "s2", tuple(rat(x) for x in self.s2))
        if len(self.s1) != len(self.s2):
            raise DegeneracyError(
                f"moment sequences differ in length: {len(self.s1)} vs {len(self.s2)}")

    @property
    def count(self) -> int:
        return len(self.s1)

    def sequence(self, j: int) -> tuple[Fraction, ...]:
        if j == 1:
            return self.s1
        if j == 2:
            return self.s2
        raise DegeneracyError(f"sequence index must be 1 or 2, got {j}")


@dataclass(frozen=True)
class JFraction:
    """Diagonal coefficients c_n, subdiagonal products a_(n+1), total mass s0."""

    c: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    s0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(rat(x) for x in self.c))
        object.__setattr__(self, "a", tuple(rat(x) for x in self.a))
        object.__setattr__(self, "s0", rat(self.s0))
        if len(self.a) not in (len(self.c) - 1, len(self.c)):
            raise DegeneracyError(
                f"J-fraction lengths inconsistent: {len(self.c)} diagonal, "
                f"{len(self.a)} subdiagonal")
        if any(x == 0 for x in self.a):
            raise DegeneracyError("J-fraction subdiagonal entries must be nonzero")

    @property
    def depth(self) -> int:
        return len(self.c)


def measure_moments(mu: MeasureModel, count: int) -> list[Fraction]:
    """Exact power moments: entry k is the integral of x^k against mu."""
    if mu.kind == INTERVAL:
        return [(mu.hi ** (k + 1) - mu.lo ** (k + 1)) / (k + 1) for k in range(count)]
    out = []
    for k in range(count):
        out.append(sum((w * t ** k for t, w in mu.atoms), Fraction(0)))
    return out


def _require_disjoint(mu1: MeasureModel, mu2: MeasureModel) -> None:
    lo1, hi1 = mu1.support_bounds()
    lo2, hi2 = mu2.support_bounds()
    if not (hi1 < lo2 or hi2 < lo1):
        raise DisjointSupportError(
            f"supports [{lo1}, {hi1}] and [{lo2}, {hi2}] are not disjoint")


def make_angelesco(mu1: MeasureModel, mu2: MeasureModel, count: int) -> MomentSystem:
    """Pair of measures on disjoint closed intervals; every index is normal."""
    _require_disjoint(mu1, mu2)
    return MomentSystem(tuple(measure_moments(mu1, count)),
                        tuple(measure_moments(mu2, count)),
                        label="angelesco")


def make_nikishin(sigma1: MeasureModel, sigma2: MeasureModel, count: int) -> MomentSystem:
    """Pair (sigma1, sigma2-hat weighted sigma1) from two discrete generators.

    The second sequence carries the moments of the measure obtained by
    weighting sigma1 with the Cauchy transform of sigma2; both component
    measures must be discrete so the weights stay rational.
    """
    if sigma1.kind != DISCRETE or sigma2.kind != DISCRETE:
        raise DegeneracyError("Nikishin generators must both be discrete")
    nodes2 = {t for t, _ in sigma2.atoms}
    for x, _ in sigma1.atoms:
        if x in nodes2:
            raise PoleError(f"sigma2 has an atom at node {x} of sigma1")
    if sigma2.atoms:
        _require_disjoint(sigma1, sigma2)
    s1 = measure_moments(sigma1, count)
    s2 = []
    for k in range(count):
        acc = Fraction(0)
        for x, v in sigma1.atoms:
            weight = sum((w / (x - t) for t, w in sigma2.atoms), Fraction(0))
            acc += v * x ** k * weight
        s2.append(acc)
    return MomentSystem(tuple(s1), tuple(s2), label="nikishin")


def _functional(s, p: Poly) -> Fraction:
    """Apply the moment functional L[x^k] = s_k to a polynomial."""
    if p.degree >= len(s):
        raise TruncationError(
            f"moment functional needs s up to index {p.degree}, have {len(s)}")
    return sum((p.coeff(i) * s[i] for i in range(p.degree + 1)), Fraction(0))


def monic_orthogonal_polys(s, upto: int) -> list[Poly]:
    """Monic orthogonal polynomials pi_0..pi_upto for the moment functional.

    Stieltjes-style construction: each pi_(j+1) follows from the three-term
    recurrence with exactly computed c_j and a_j, which is the O(depth^2)
    Gram-Schmidt against the functional.
    """
    from .kernel import X
    if upto < 0:
        return []
    s = [rat(x) for x in s]
    need = max(2 * upto, 1)
    if len(s) < need:
        raise TruncationError(
            f"need {need} moments for orthogonal polynomials up to degree {upto}, "
            f"have {len(s)}")
    polys = [Poly.of(1)]
    norms: list[Fraction] = []          # norms[j] = L[pi_j^2], j <= upto-1
    for j in range(upto):
        pj = polys[j]
        nj = _functional(s, pj * pj)
        if nj == 0:
            raise DegeneracyError(
                f"moment functional degenerates at depth {j + 1} "
                f"(norm of pi_{j} vanishes)")
        norms.append(nj)
        cj = _functional(s, X * pj * pj) / nj
        nxt = (X - Poly.of(cj)) * pj
        if j >= 1:
            nxt = nxt - (norms[j] / norms[j - 1]) * polys[j - 1]
        polys.append(nxt)
    return polys


def moments_to_jfraction(s, depth: int) -> JFraction:
    """Three-term recurrence coefficients c_0..c_(depth-1), a_1..a_(depth-1).

    Exact monic Stieltjes procedure; fails loudly (naming the depth) when a
    leading principal Hankel determinant vanishes.
    """
    from .kernel import X
    s = [rat(x) for x in s]
    if depth < 1:
        raise DegeneracyError("J-fraction depth must be at least 1")
    if len(s) < 2 * depth:
        raise TruncationError(
            f"depth {depth} needs {2 * depth} moments, have {len(s)}")
    c: list[Fraction] = []
    a: list[Fraction] = []
    pi_prev, pi = Poly(), Poly.of(1)
    norm_prev, norm = None, s[0]
    for j in range(depth):
        if norm == 0:
            raise DegeneracyError(
                f"vanishing Hankel determinant: functional degenerates at depth {j}")
        cj = _functional(s, X * pi * pi) / norm
        c.append(cj)
        if j >= 1:
            a.append(norm / norm_prev)
        nxt = (X - Poly.of(cj)) * pi
        if j >= 1:
            nxt = nxt - a[-1] * pi_prev
        pi_prev, pi = pi, nxt
        norm_prev = norm
        if j + 1 < depth:
            norm = _functional(s, pi * pi)
    return JFraction(tuple(c), tuple(a), s[0])


def jfraction_to_moments(j: JFraction, count: int) -> list[Fraction]:
    """Recover moments as s0 times the (0,0) entry of powers of the monic
    tridiagonal matrix with diagonal c and subdiagonal a.

    Exact left-inverse of moments_to_jfraction on its image for
    count <= 2 * depth.
    """
    if count < 1:
        raise DegeneracyError("moment count must be at least 1")
    d = j.depth
    # iterate v := T^k e_0 without forming T
    v = [Fraction(0)] * d
    v[0] = Fraction(1)
    out = [j.s0 * v[0]]
    for _ in range(count - 1):
        w = [Fraction(0)] * d
        for i in range(d):
            acc = j.c[i] * v[i]
            if i + 1 < d:
                acc += v[i + 1]            # superdiagonal of the monic matrix is 1
            if i >= 1 and i - 1 < len(j.a):
                acc += j.a[i - 1] * v[i - 1]
            w[i] = acc
        v = w
        out.append(j.s0 * v[0])
    return out
