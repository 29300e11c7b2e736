"""Exact integer combinatorics and canonical colex ranking of vertex sets.

Subsets of [n] = {1, ..., n} are stored as sorted ascending tuples.  Their
canonical integer id is the colexicographic rank: A precedes B iff
max(A symmetric-difference B) lies in B.  Colex ranks of k-sets stream in
increasing order, which lets the sampler skip over absent edges without
materializing all C(n, k) of them.

Enumeration-facing arithmetic is exact (Python ints / Fractions);
probability-facing quantities (p, delta, lambda) are 64-bit floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError


def binomial(n: int, r: int) -> int:
    """Binomial coefficient C(n, r) as an exact integer; 0 when r > n."""
    if n < 0 or r < 0:
        raise ValidationError(f"binomial needs non-negative arguments, got ({n}, {r})")
    return math.comb(n, r)


def falling_factorial(n: int, k: int) -> int:
    """n * (n-1) * ... * (n-k+1); 1 when k = 0, 0 when k > n."""
    if n < 0 or k < 0:
        raise ValidationError(f"falling_factorial needs non-negative arguments, got ({n}, {k})")
    return math.perm(n, k)


def _validate_subset(s, n: int) -> None:
    prev = 0
    for v in s:
        if not isinstance(v, int):
            raise ValidationError(f"subset elements must be integers, got {v!r}")
        if v <= prev:
            raise ValidationError(f"subset must be sorted ascending without duplicates: {list(s)}")
        prev = v
    if prev > n:
        raise ValidationError(f"subset element {prev} exceeds n={n}")


def rank_subset(s, n: int) -> int:
    """Colex rank of a sorted subset of [1, n].

    rank(S) = sum over positions i (1-based) of C(s_i - 1, i).
    """
    _validate_subset(s, n)
    return sum(math.comb(v - 1, i) for i, v in enumerate(s, start=1))


def unrank_subset(rank: int, size: int, n: int) -> list[int]:
    """Inverse of :func:`rank_subset`: the subset of [1, n] at colex `rank`."""
    if size < 0 or n < 0:
        raise ValidationError(f"unrank_subset needs size, n >= 0, got ({size}, {n})")
    total = math.comb(n, size)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} out of range [0, {total}) for C({n},{size})")
    out = [0] * size
    rem = rank
    hi = n
    for i in range(size, 0, -1):
        # largest a in [i, hi] with C(a-1, i) <= rem
        lo = i
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid - 1, i) <= rem:
                lo = mid
            else:
                hi = mid - 1
        out[i - 1] = lo
        rem -= math.comb(lo - 1, i)
        hi = lo - 1
    return out


def subsets_colex(pool, r: int):
    """Yield the r-subsets of a sorted pool in colex order (as tuples)."""
    pool = tuple(pool)
    if r == 0:
        yield ()
        return
    if r > len(pool):
        return
    for top in range(r - 1, len(pool)):
        for rest in subsets_colex(pool[:top], r - 1):
            yield rest + (pool[top],)


@dataclass(frozen=True)
class TheoryParams:
    """Model parameters (n, k, j, epsilon) and the constants derived from them.

    c0     = C(k, j) - 1
    p0     = 1 / (c0 * C(n-j, k-j))      (critical edge probability)
    p      = (1 - epsilon) * p0          (subcritical edge probability)
    delta  = -epsilon - log(1 - epsilon) (tail decay rate of large components)
    lam    = epsilon^3 * C(n, j)         (scale whose log sets the top size)
    """

    n: int
    k: int
    j: int
    epsilon: float
    c0: int = field(init=False)
    p0: float = field(init=False)
    p: float = field(init=False)
    delta: float = field(init=False)
    lam: float = field(init=False)

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValidationError(f"k must be >= 2, got {self.k}")
        if not 1 <= self.j <= self.k - 1:
            raise ValidationError(f"j must satisfy 1 <= j <= k-1, got j={self.j}, k={self.k}")
        if self.n < self.k:
            raise ValidationError(f"n must be >= k, got n={self.n}, k={self.k}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        c0 = math.comb(self.k, self.j) - 1
        p0 = 1.0 / (c0 * math.comb(self.n - self.j, self.k - self.j))
        if p0 <= 0.0:
            raise ValidationError("p0 underflowed; n is too large for float probabilities")
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p", (1.0 - self.epsilon) * p0)
        object.__setattr__(self, "delta", -self.epsilon - math.log1p(-self.epsilon))
        object.__setattr__(self, "lam", self.epsilon**3 * math.comb(self.n, self.j))

    @property
    def supersets_per_jset(self) -> int:
        """Number of k-sets containing a fixed j-set: C(n-j, k-j)."""
        return math.comb(self.n - self.j, self.k - self.j)
