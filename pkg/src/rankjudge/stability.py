"""Subset stability: does a pair's verdict survive changes of company?

Fix a pair (a, b) and a pool cardinality k. For every subset of the other
algorithms of size k - 2, re-rank the restricted matrix and re-test the
pair as a member of that smaller pool (thresholds and corrections re-derive
from the pool unless the policy pins num_comparisons). Pool-independent
tests (sign, wilcoxon) give the same verdict in every pool with a pinned
family size; mean-ranks can and does flip, which is the point of the sweep.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .errors import ValidationError
from .omnibus import friedman
from .posthoc import CorrectionPolicy, normalize_test_id, pairwise_outcome
from .ranking import PerformanceMatrix, restrict


@dataclass(frozen=True)
class PoolDecision:
    """The pair's verdict inside one candidate pool.

    friedman_p is advisory context (how strongly this pool's omnibus screen
    reacts); it does not gate the pairwise decision here.
    """

    pool: tuple[str, ...]
    statistic: Optional[float]
    p_raw: Optional[float]
    critical_value: Optional[float]
    reject: bool
    friedman_p: float
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "pool": list(self.pool),
            "statistic": self.statistic,
            "p_raw": self.p_raw,
            "critical_value": self.critical_value,
            "reject": self.reject,
            "friedman_p": self.friedman_p,
            "note": self.note,
        }


@dataclass(frozen=True, eq=False)
class StabilityReport:
    """Sweep summary: how many pools of the given cardinality found the
    pair significant. pools_evaluated always equals C(m-2, k-2)."""

    pair: tuple[str, str]
    test: str
    policy: CorrectionPolicy
    cardinality: int
    pools_evaluated: int
    pools_significant: int
    decisions: tuple[PoolDecision, ...]

    @property
    def unanimous(self) -> bool:
        return self.pools_significant in (0, self.pools_evaluated)

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "test": self.test,
            "policy": self.policy.to_dict(),
            "cardinality": self.cardinality,
            "pools_evaluated": self.pools_evaluated,
            "pools_significant": self.pools_significant,
            "unanimous": self.unanimous,
            "decisions": [d.to_dict() for d in self.decisions],
        }


def subset_stability(
    perf: PerformanceMatrix,
    pair: Sequence[str],
    cardinality: int,
    test: str = "mean-ranks",
    policy: CorrectionPolicy = CorrectionPolicy(),
    direction: str = "higher-is-better",
) -> StabilityReport:
    """Test the pair inside every pool of the given cardinality containing it.

    Pools enumerate combinations of the remaining algorithms in matrix
    order (deterministic); each pool keeps matrix order internally. The
    correction policy is applied per pool: with num_comparisons = None the
    family size scales as k(k-1)/2, with an explicit value it stays pinned
    across pools. Degenerate pair data (all differences zero) make every
    pool untestable and propagate as DegenerateDataError.
    """
    test = normalize_test_id(test)
    a, b = pair
    ia, ib = perf.index(a), perf.index(b)
    if ia == ib:
        raise ValidationError(f"pair must name two distinct algorithms, got {a!r} twice")
    if not isinstance(cardinality, int) or not 2 <= cardinality <= perf.m:
        raise ValidationError(
            f"cardinality must be an int in [2, {perf.m}], got {cardinality!r}"
        )
    others = [nm for nm in perf.algorithm_names if nm not in (a, b)]
    decisions: list[PoolDecision] = []
    for combo in itertools.combinations(others, cardinality - 2):
        members = sorted((a, b, *combo), key=perf.index)
        sub = restrict(perf, members)
        outcome = pairwise_outcome(sub, (a, b), test, policy, direction)
        gate = friedman(sub, policy.alpha, direction)
        decisions.append(
            PoolDecision(
                pool=tuple(members),
                statistic=outcome.statistic,
                p_raw=outcome.p_value,
                critical_value=outcome.detail.get("critical_value"),
                reject=outcome.reject,
                friedman_p=gate.p_value,
                note=outcome.detail.get("approximation_reason"),
            )
        )
    evaluated = len(decisions)
    expected = comb(perf.m - 2, cardinality - 2)
    if evaluated != expected:
        raise AssertionError(
            f"evaluated {evaluated} pools, expected C({perf.m - 2}, "
            f"{cardinality - 2}) = {expected}"
        )
    return StabilityReport(
        pair=(a, b),
        test=test,
        policy=policy,
        cardinality=cardinality,
        pools_evaluated=evaluated,
        pools_significant=sum(d.reject for d in decisions),
        decisions=tuple(decisions),
    )
