"""Exact and analytic enumeration of two-type trees, wheels, and unicycles.

Counting conventions.  F_s is the generating-function count of rooted
unlabelled two-type trees with s type-k vertices, the coefficient of z^s
in the unique series T with T(0) = 0 solving

    T = exp(z * (1 + T)^c0) - 1,       c0 = C(k, j) - 1.

Closed form:  F_s = sum_{r=1..s} c0^(s-r) s^(s-r-1) / ((r-1)! (s-r)!),
and the labelled count is B_s = C(n, j) * C(n-j, k-j)^s * F_s.  Both are
exact rationals.  Note B_s weights sibling-label collisions by symmetry
(1/2 per unordered repeated pair), so it slightly exceeds the plain count
of distinct process instances; `brute_force_Bs` returns the plain count.

Series and census arithmetic is exact; probability-weighted bound
evaluators work in log space because values like p0^(1-s) dwarf any float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .combinatorics import TheoryParams
from .errors import ResourceLimitError, ValidationError


class RationalSeries:
    """Truncated formal power series with exact Fraction coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int) -> None:
        if order < 0:
            raise ValidationError(f"series order must be >= 0, got {order}")
        cs = [Fraction(c) for c in coeffs[: order + 1]]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs: list[Fraction] = cs
        self.order = order

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> "RationalSeries":
        return cls([0, 1], order)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.order, other.order)
        return RationalSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], order
        )

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.order, other.order)
        return RationalSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], order
        )

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if not a:
                continue
            for jj in range(order + 1 - i):
                b = other.coeffs[jj]
                if b:
                    out[i + jj] += a * b
        return RationalSeries(out, order)

    def shift_const(self, c) -> "RationalSeries":
        out = list(self.coeffs)
        out[0] += Fraction(c)
        return RationalSeries(out, self.order)

    def scale(self, c) -> "RationalSeries":
        c = Fraction(c)
        return RationalSeries([a * c for a in self.coeffs], self.order)

    def scale_arg(self, c) -> "RationalSeries":
        """Substitute z -> c*z."""
        c = Fraction(c)
        return RationalSeries(
            [a * c**i for i, a in enumerate(self.coeffs)], self.order
        )

    def pow(self, e: int) -> "RationalSeries":
        if e < 0:
            raise ValidationError(f"series power must be >= 0, got {e}")
        out = RationalSeries.one(self.order)
        for _ in range(e):
            out = out * self
        return out

    def exp(self) -> "RationalSeries":
        """exp of a series with zero constant term, via b' = a' * b."""
        if self.coeffs[0] != 0:
            raise ValidationError("exp requires a zero constant term")
        a = self.coeffs
        b = [Fraction(0)] * (self.order + 1)
        b[0] = Fraction(1)
        for m in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, m + 1):
                if a[i]:
                    acc += i * a[i] * b[m - i]
            b[m] = acc / m
        return RationalSeries(b, self.order)


def lambert_power_coefficients(r: int, i_max: int) -> RationalSeries:
    """Coefficients of W(z)^r for the branch of w*exp(w) = z with W(0) = 0.

    [z^i] W^r = -r * (-i)^(i-r-1) / (i-r)!  for i >= r, and 0 below.
    """
    if r < 1:
        raise ValidationError(f"power r must be >= 1, got {r}")
    coeffs = [Fraction(0)] * (i_max + 1)
    for i in range(r, i_max + 1):
        coeffs[i] = Fraction(-r) * Fraction(-i) ** (i - r - 1) / math.factorial(i - r)
    return RationalSeries(coeffs, i_max)


def tj_series_fixed_point(c0: int, s_max: int) -> RationalSeries:
    """The unique series T, T(0) = 0, with T = exp(z*(1+T)^c0) - 1.

    Fixed-point iteration gains one order of accuracy per round, so
    s_max + 1 rounds pin all coefficients up to z^s_max.
    """
    if s_max < 1:
        raise ValidationError(f"s_max must be >= 1, got {s_max}")
    if c0 < 1:
        raise ValidationError(f"c0 must be >= 1, got {c0}")
    z = RationalSeries.z(s_max)
    t = RationalSeries.zero(s_max)
    for _ in range(s_max + 1):
        t = (z * t.shift_const(1).pow(c0)).exp().shift_const(-1)
    return t


def f_s(c0: int, s: int) -> Fraction:
    """Rooted unlabelled two-type tree count with s type-k vertices, exact.

    Evaluates sum_{r=1..s} c0^(s-r) s^(s-r-1) / ((r-1)!(s-r)!) over the
    common denominator s! * s, keeping everything in integer arithmetic.
    """
    if s < 1:
        raise ValidationError(f"s must be >= 1, got {s}")
    if c0 < 1:
        raise ValidationError(f"c0 must be >= 1, got {c0}")
    num = sum(
        c0 ** (s - r) * s ** (s - r) * r * math.comb(s, r) for r in range(1, s + 1)
    )
    return Fraction(num, math.factorial(s) * s)


def b_s(params: TheoryParams, s: int) -> Fraction:
    """Labelled count: B_s = C(n, j) * C(n-j, k-j)^s * F_s, exact."""
    scale = math.comb(params.n, params.j) * params.supersets_per_jset**s
    return scale * f_s(params.c0, s)


def exp_reciprocal_bounds(c0: int, terms: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of e^(1/c0): truncated series and series + tail bound.

    The tail after m = `terms` is below x^(terms+1)/(terms+1)! * 1/(1 - x/(terms+2))
    for x = 1/c0 < terms + 2.
    """
    if c0 < 1 or terms < 1:
        raise ValidationError("need c0 >= 1 and terms >= 1")
    x = Fraction(1, c0)
    low = sum((x**m / math.factorial(m) for m in range(terms + 1)), Fraction(0))
    tail = (x ** (terms + 1) / math.factorial(terms + 1)) / (1 - x / (terms + 2))
    return low, low + tail


@dataclass(frozen=True)
class EnumReport:
    """Per-size report: exact counts and the two-sided tree-count bracket.

    lower = c0^(s-1) s^(s-1) / s!  and  upper = lower * E  with E a rational
    upper bound of e^(1/c0); bounds_hold checks lower <= F_s <= upper.
    """

    s: int
    f_s: Fraction
    b_s: Fraction
    lower: Fraction
    upper: Fraction
    bounds_hold: bool


def enum_report(
    params: TheoryParams,
    s: int,
    exp_bracket: Optional[tuple[Fraction, Fraction]] = None,
) -> EnumReport:
    if exp_bracket is None:
        exp_bracket = exp_reciprocal_bounds(params.c0, s + 2)
    fs_val = f_s(params.c0, s)
    lower = Fraction(params.c0 ** (s - 1) * s ** (s - 1), math.factorial(s))
    upper = lower * exp_bracket[1]
    return EnumReport(
        s=s,
        f_s=fs_val,
        b_s=b_s(params, s),
        lower=lower,
        upper=upper,
        bounds_hold=lower <= fs_val <= upper,
    )


def brute_force_Bs(n: int, k: int, j: int, s: int) -> tuple[int, int]:
    """Exhaustively count branching-process-reachable rooted labelled trees.

    Returns (total, hypertree_only) over trees with exactly s type-k
    vertices: sibling k-labels are distinct sets, labels may repeat across
    generations; hypertree_only keeps trees whose labels are all distinct.
    Guarded to C(n, k) <= 50 and s <= 4.
    """
    if not (k >= 2 and 1 <= j <= k - 1 and n >= k):
        raise ValidationError(f"need n >= k > j >= 1, got n={n}, k={k}, j={j}")
    if s < 1:
        raise ValidationError(f"s must be >= 1, got {s}")
    if math.comb(n, k) > 50 or s > 4:
        raise ResourceLimitError(
            f"brute-force guard: need C(n,k) <= 50 and s <= 4, got C={math.comb(n, k)}, s={s}"
        )
    ksets = [tuple(c) for c in combinations(range(1, n + 1), k)]
    total = 0
    distinct = 0

    def recurse(pending, used, jseen, kseen, ok):
        nonlocal total, distinct
        if used == s:
            total += 1
            distinct += ok
            return
        if not pending:
            return
        head = pending[0]
        rest = pending[1:]
        head_set = set(head)
        candidates = [kset for kset in ksets if head_set <= set(kset)]
        budget = s - used
        for c in range(0, budget + 1):
            for chosen in combinations(candidates, c):
                new_pending = list(rest)
                new_jseen, new_kseen, new_ok = jseen, kseen, ok
                for kset in chosen:
                    if new_ok:
                        if kset in new_kseen:
                            new_ok = False
                        else:
                            new_kseen = new_kseen | {kset}
                    for sub in combinations(kset, j):
                        if sub == head:
                            continue
                        new_pending.append(sub)
                        if new_ok:
                            if sub in new_jseen:
                                new_ok = False
                            else:
                                new_jseen = new_jseen | {sub}
                recurse(tuple(new_pending), used + c, new_jseen, new_kseen, new_ok)

    for root in combinations(range(1, n + 1), j):
        recurse((root,), 0, frozenset([root]), frozenset(), True)
    return total, distinct


class WheelBound(NamedTuple):
    c_w: Fraction
    bound: float


def wheel_constant(k: int, j: int) -> Fraction:
    """c_w = (k-j)^j / (j!(k-j)!) * prod_{m=1..j-1} (1 - (C(k-m,j-m)-1)/c0)^(-1)."""
    c0 = math.comb(k, j) - 1
    cw = Fraction((k - j) ** j, math.factorial(j) * math.factorial(k - j))
    for m in range(1, j):
        cw /= 1 - Fraction(math.comb(k - m, j - m) - 1, c0)
    return cw


def wheel_bound_exact(n: int, k: int, j: int, ell: int) -> tuple[Fraction, Fraction]:
    """Exact rational form of the wheel-count bound c_w n^(k-j) / (p0^(ell-1) ell)."""
    if ell < 2:
        raise ValidationError(f"wheel length must be >= 2, got {ell}")
    if not (k >= 2 and 1 <= j <= k - 1 and n >= k):
        raise ValidationError(f"need n >= k > j >= 1, got n={n}, k={k}, j={j}")
    cw = wheel_constant(k, j)
    c0 = math.comb(k, j) - 1
    inv_p0 = c0 * math.comb(n - j, k - j)
    bound = cw * n ** (k - j) * inv_p0 ** (ell - 1) / ell
    return cw, bound


def wheel_bound(n: int, k: int, j: int, ell: int) -> WheelBound:
    """Upper bound on the number of possible wheels of length ell on [n]."""
    cw, bound = wheel_bound_exact(n, k, j, ell)
    return WheelBound(c_w=cw, bound=float(bound))


class LaplaceCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def laplace_sum_check(a: int, s: int) -> LaplaceCheck:
    """Check sum_{i=1..s} i^a falling(s,i)/s^i <= 5 (2a)^(a/2) s^((a+1)/2).

    Valid for s >= (16a)^2; the left side is accumulated in log space so
    huge s neither overflow nor underflow the partial products.
    """
    if a < 1:
        raise ValidationError(f"a must be >= 1, got {a}")
    if s < (16 * a) ** 2:
        raise ValidationError(f"need s >= (16a)^2 = {(16 * a) ** 2}, got {s}")
    i = np.arange(1, s + 1, dtype=np.float64)
    log_ratio = np.cumsum(np.log1p(-(i - 1) / s))  # log of falling(s, i)/s^i
    lhs = float(np.exp(a * np.log(i) + log_ratio).sum())
    rhs = 5.0 * (2 * a) ** (a / 2) * s ** ((a + 1) / 2)
    return LaplaceCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs)


def _log_b_s(params: TheoryParams, s: int) -> float:
    val = b_s(params, s)
    return math.log(val.numerator) - math.log(val.denominator)


def expected_Rs_upper(params: TheoryParams, s: int) -> float:
    """Upper bound on the expected total of type-j vertices over all
    branching instances of size s:
    B_s p^s (1-p)^((1+c0 s) C(n-j,k-j) - s(1+c0)), log-space evaluated."""
    if s < 1:
        raise ValidationError(f"s must be >= 1, got {s}")
    exponent = (1 + params.c0 * s) * params.supersets_per_jset - s * (1 + params.c0)
    logv = _log_b_s(params, s) + s * math.log(params.p) + exponent * math.log1p(-params.p)
    return math.exp(logv)


def expected_Cs_lower_reference(params: TheoryParams, s: int) -> float:
    """Reference value for the expected number of j-sets in hypertree
    components of size s: B_s p^s (1-p)^((1+s c0) C(n-j,k-j)).

    Uses B_s in place of the all-labels-distinct count (they agree up to
    1 - o(1)), so this is a reference value, not a rigorous lower bound.
    """
    if s < 1:
        raise ValidationError(f"s must be >= 1, got {s}")
    exponent = (1 + s * params.c0) * params.supersets_per_jset
    logv = _log_b_s(params, s) + s * math.log(params.p) + exponent * math.log1p(-params.p)
    return math.exp(logv)


def unicycle_bound(params: TheoryParams, s: int, constant: float = 244.0) -> float:
    """Log of the bound on marked two-type unicycle counts of size s:

        log( constant * c0^2 * c_w * n^(k-j) * p0^(1-s) * s^(s+1/2) / s! ).

    The bound itself exceeds any float for large s, so the natural log is
    returned.  Valid for s >= 1024.
    """
    if s < 1024:
        raise ValidationError(f"need s >= 1024, got {s}")
    if constant <= 0:
        raise ValidationError(f"constant must be positive, got {constant}")
    cw = wheel_constant(params.k, params.j)
    inv_p0 = params.c0 * params.supersets_per_jset
    return (
        math.log(constant)
        + 2 * math.log(params.c0)
        + math.log(cw.numerator)
        - math.log(cw.denominator)
        + (params.k - params.j) * math.log(params.n)
        + (s - 1) * math.log(inv_p0)
        + (s + 0.5) * math.log(s)
        - math.lgamma(s + 1)
    )


def predicted_L1(params: TheoryParams) -> float:
    """Predicted size of the largest component:
    (log lambda - 5/2 log log lambda) / delta."""
    if params.lam <= math.e:
        raise ValidationError(f"prediction needs lambda > e, got lambda={params.lam}")
    loglam = math.log(params.lam)
    return (loglam - 2.5 * math.log(loglam)) / params.delta


def predicted_M1(params: TheoryParams) -> float:
    """Predicted order of the largest component: c0 times its size."""
    return params.c0 * predicted_L1(params)
