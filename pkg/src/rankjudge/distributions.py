"""Probability kernels used by the tests.

Everything here is deterministic, dependency-free (stdlib math only) and
bit-stable across runs and platforms that implement IEEE erfc/exp the same
way. Where a tail probability feeds a reject/accept decision we compute it
with exact integer arithmetic (Fraction over a power of two) and convert to
float once, at the very end.

Accuracy contracts:
  normal_cdf        absolute error a few ulp (erfc based, no series of our own)
  normal_quantile   normal_cdf(normal_quantile(p)) within 1e-10 of p
  chi_square_sf     relative error ~1e-13 for integer dof (closed forms)
  binomial_two_sided_p, WilcoxonNullTable   exact up to one final rounding
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ExactLimitError

_SQRT2 = math.sqrt(2.0)

# Largest n for which the exact Wilcoxon null table is served. Above this
# the table is still cheap to build, but the normal approximation is already
# accurate to the displayed digits, so exactness buys nothing.
WILCOXON_EXACT_LIMIT = 30


def normal_cdf(z: float) -> float:
    """Standard normal CDF, Phi(z) = erfc(-z / sqrt 2) / 2."""
    z = float(z)
    if math.isnan(z):
        raise ValueError("normal_cdf needs a real argument, got nan")
    return 0.5 * math.erfc(-z / _SQRT2)


def normal_sf(z: float) -> float:
    """Upper tail 1 - Phi(z), computed without cancellation."""
    return normal_cdf(-z)


def two_sided_normal_p(z: float) -> float:
    """Two-sided p-value 2 * (1 - Phi(|z|)) = erfc(|z| / sqrt 2)."""
    z = float(z)
    if math.isnan(z):
        raise ValueError("two_sided_normal_p needs a real argument, got nan")
    return math.erfc(abs(z) / _SQRT2)


@lru_cache(maxsize=None)
def normal_quantile(p: float) -> float:
    """Inverse standard normal CDF on 0 < p < 1.

    Solved by bracketed bisection on normal_cdf. Slower than a rational
    approximation but trivially correct: the answer is the float where the
    monotone CDF crosses p, so the round trip normal_cdf(normal_quantile(p))
    reproduces p to ~1 ulp of the CDF, far inside the 1e-10 contract. The
    cache makes repeated calls with the same confidence level free.
    """
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie strictly between 0 and 1, got {p!r}")
    lo, hi = -40.0, 40.0  # cdf(-40) underflows to 0, cdf(40) rounds to 1
    while True:
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break  # interval has collapsed to adjacent floats
        if normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def chi_square_sf(x: float, dof: int) -> float:
    """Survival function P(X >= x) of the chi-square distribution.

    Integer dof only, which admits closed forms: for even dof the finite
    Poisson sum e^{-y} sum_{j<dof/2} y^j / j! with y = x/2; for odd dof
    erfc(sqrt y) plus a finite half-integer-gamma series. No continued
    fractions, no iteration, so identical results on every run.
    """
    if not isinstance(dof, int) or isinstance(dof, bool):
        raise ValueError(f"dof must be an int, got {dof!r}")
    if dof < 1:
        raise ValueError(f"dof must be >= 1, got {dof}")
    x = float(x)
    if math.isnan(x):
        raise ValueError("chi_square_sf needs a real x, got nan")
    if x < 0.0:
        raise ValueError(f"chi-square statistic must be >= 0, got {x}")
    if x == 0.0:
        return 1.0
    y = 0.5 * x
    if dof % 2 == 0:
        term = math.exp(-y)
        total = term
        for j in range(1, dof // 2):
            term *= y / j
            total += term
    else:
        total = math.erfc(math.sqrt(y))
        if dof > 1:
            # Q(a+1, y) = Q(a, y) + y^a e^{-y} / Gamma(a+1), stepping a from 1/2
            term = math.sqrt(y) * math.exp(-y) / math.gamma(1.5)
            total += term
            a = 1.5
            for _ in range((dof - 3) // 2):
                term *= y / a
                a += 1.0
                total += term
    return min(total, 1.0)


@lru_cache(maxsize=None)
def binomial_two_sided_p(k: int, n: int) -> float:
    """Exact two-sided p-value for k successes in n fair-coin trials.

    p = min(1, 2 * min(P(X <= k), P(X >= k))) with X ~ Binomial(n, 1/2).
    Tail sums are exact integers over 2^n; the single float conversion at
    the end is the only rounding. Symmetric: p(k, n) == p(n - k, n).
    """
    if not isinstance(k, int) or not isinstance(n, int):
        raise ValueError(f"k and n must be ints, got {k!r}, {n!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    lower = sum(math.comb(n, i) for i in range(0, k + 1))
    upper = sum(math.comb(n, i) for i in range(k, n + 1))
    p = Fraction(2 * min(lower, upper), 2**n)
    return float(min(p, Fraction(1)))


@dataclass(frozen=True)
class WilcoxonNullTable:
    """Exact null distribution of the positive-rank sum W+ for n tie-free
    non-zero differences.

    counts[w] is the number of the 2^n sign assignments whose positive ranks
    sum to w, for w = 0 .. n(n+1)/2. The table is symmetric and sums to 2^n.
    """

    n: int
    counts: tuple[int, ...]

    @property
    def max_sum(self) -> int:
        return self.n * (self.n + 1) // 2

    def _check_w(self, w: int) -> int:
        w = int(w)
        if not 0 <= w <= self.max_sum:
            raise ValueError(
                f"W+ must lie in [0, {self.max_sum}] for n={self.n}, got {w}"
            )
        return w

    def cdf(self, w: int) -> Fraction:
        """P(W+ <= w), exact."""
        w = self._check_w(w)
        return Fraction(sum(self.counts[: w + 1]), 2**self.n)

    def sf(self, w: int) -> Fraction:
        """P(W+ >= w), exact."""
        w = self._check_w(w)
        return Fraction(sum(self.counts[w:]), 2**self.n)

    def two_sided_p(self, w: int) -> float:
        """min(1, 2 * min(P(W+ <= w), P(W+ >= w))), exact then one rounding."""
        w = self._check_w(w)
        p = 2 * min(self.cdf(w), self.sf(w))
        return float(min(p, Fraction(1)))


@lru_cache(maxsize=None)
def wilcoxon_null_table(n: int) -> WilcoxonNullTable:
    """Build the exact W+ null table by dynamic programming.

    Classic subset-sum recurrence: after inserting rank j, counts[w] gains
    counts[w - j] (the assignments where rank j went positive). Updating w
    downward makes the pass in-place. O(n^3) integer additions.

    Raises ExactLimitError above WILCOXON_EXACT_LIMIT; callers are expected
    to switch to the normal approximation there, not to force the table.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive int, got {n!r}")
    if n > WILCOXON_EXACT_LIMIT:
        raise ExactLimitError(
            f"exact Wilcoxon table capped at n={WILCOXON_EXACT_LIMIT}, "
            f"got n={n}; use the normal approximation"
        )
    counts = [1] + [0] * (n * (n + 1) // 2)
    top = 0
    for j in range(1, n + 1):
        top += j
        for w in range(top, j - 1, -1):
            counts[w] += counts[w - j]
    return WilcoxonNullTable(n=n, counts=tuple(counts))
