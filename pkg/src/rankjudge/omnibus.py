"""Omnibus screening: are the m algorithms distinguishable at all?

The statistic is the classic rank-sum quadratic

    S = 12 / (n m (m+1)) * sum_i (R_i - n(m+1)/2)^2

where R_i is algorithm i's rank sum over the n datasets, referred to a
chi-square with m-1 degrees of freedom. S is invariant under flipping the
ranking direction (deviations only change sign) and under any monotone
per-dataset transform of the scores, since it sees ranks only.

For m = 2 the statistic collapses to (wins_a - wins_b)^2 / n on tie-free
data, i.e. the squared sign-test z, and the chi-square(1) tail equals the
two-sided normal tail. Tests pin that correspondence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .distributions import chi_square_sf
from .errors import ValidationError
from .ranking import PerformanceMatrix, rank_columns


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise ValidationError(
            f"alpha must lie strictly between 0 and 1, got {alpha!r}"
        )
    return alpha


@dataclass(frozen=True, eq=False)
class TestOutcome:
    """Result of a single statistical test.

    method names the test and its decision form after the slash:
    "p-value" means reject iff p_value <= alpha_effective, "threshold"
    means reject iff statistic >= detail["critical_value"] (no p-value in
    the classical sense; p_value may still carry an informational normal
    approximation). alpha_effective is the per-comparison level actually
    applied, i.e. after any family correction.
    """

    method: str
    statistic: float
    p_value: Optional[float]
    alpha_effective: float
    reject: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "statistic": self.statistic,
            "p_value": self.p_value,
            "alpha_effective": self.alpha_effective,
            "reject": self.reject,
            "detail": dict(self.detail),
        }


def friedman(
    perf: PerformanceMatrix,
    alpha: float = 0.05,
    direction: str = "higher-is-better",
) -> TestOutcome:
    """Screen the whole pool for any performance difference.

    Returns a p-value form TestOutcome; detail carries the rank sums and
    mean ranks under the given direction (the statistic itself does not
    depend on it). A constant matrix gives S = 0, p = 1: valid, just
    uninformative.
    """
    alpha = check_alpha(alpha)
    rm = rank_columns(perf, direction)
    m, n = perf.m, perf.n
    dev = rm.rank_sums - n * (m + 1) / 2.0
    ssd = float(np.dot(dev, dev))
    # 12.0 * ssd first: both factors are exactly representable small
    # integers for typical m, n, keeping the worked-example value exact.
    statistic = 12.0 * ssd / (n * m * (m + 1))
    p_value = chi_square_sf(statistic, m - 1)
    return TestOutcome(
        method="friedman/p-value",
        statistic=statistic,
        p_value=p_value,
        alpha_effective=alpha,
        reject=p_value <= alpha,
        detail={
            "dof": m - 1,
            "m": m,
            "n": n,
            "direction": direction,
            "rank_sums": [float(x) for x in rm.rank_sums],
            "mean_ranks": [float(x) for x in rm.mean_ranks],
            "algorithms": list(perf.algorithm_names),
        },
    )
