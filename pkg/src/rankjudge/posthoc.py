"""Pairwise post-hoc tests and family-wise corrections.

Three families of pairwise tests:

  mean-ranks   threshold test on the difference of mean ranks computed over
               the *whole pool*. Reject iff |rbar_a - rbar_b| >= z* *
               sqrt(m(m+1)/(6n)). Its verdict on a pair changes when
               unrelated algorithms join or leave the pool, because both m
               in the variance and the mean ranks themselves move. Kept
               because it is widespread; every report carries a caution.
  sign         exact binomial (or normal approximation) on the win counts
               of the pair alone. Pool-independent.
  wilcoxon     signed-rank test on the paired differences, exact null table
               for small tie-free samples, normal approximation with tie
               correction otherwise. Pool-independent.

Statistic sign conventions (pair given as (a, b)): sign tests report
wins_a - wins_b, Wilcoxon reports W+ of d = a - b (swap maps W+ to
n(n+1)/2 - W+), mean-ranks reports |rbar_a - rbar_b| with the signed
difference in detail. Two-sided p-values are invariant under the swap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .distributions import (
    WILCOXON_EXACT_LIMIT,
    binomial_two_sided_p,
    normal_quantile,
    two_sided_normal_p,
    wilcoxon_null_table,
)
from .errors import DegenerateDataError, ValidationError
from .omnibus import TestOutcome, check_alpha
from .ranking import PerformanceMatrix, RankMatrix, midrank_1d, rank_columns

PAIRWISE_TESTS = ("sign-exact", "sign-normal-approx", "wilcoxon", "mean-ranks")

CORRECTION_KINDS = ("none", "bonferroni", "holm")

MEAN_RANKS_CAUTION = (
    "caution: mean-ranks verdicts depend on the whole pool of algorithms, "
    "not just the pair; adding or dropping unrelated algorithms can flip "
    "them. Prefer the sign or wilcoxon test for pool-independent pairwise "
    "decisions."
)


def normalize_test_id(test: str) -> str:
    """Canonical pairwise test id; "sign" is shorthand for "sign-exact"."""
    if test == "sign":
        return "sign-exact"
    if test not in PAIRWISE_TESTS:
        raise ValidationError(
            f"unknown test {test!r}; choose from sign, "
            + ", ".join(PAIRWISE_TESTS)
        )
    return test


@dataclass(frozen=True)
class CorrectionPolicy:
    """How a family of pairwise comparisons controls its error rate.

    num_comparisons = None means "derive the family size from the pool",
    i.e. m(m-1)/2 comparisons; an explicit value pins the family size, for
    instance to keep corrections identical while sweeping subsets of the
    pool. kind "none" tests each pair at alpha uncorrected.
    """

    kind: str = "bonferroni"
    alpha: float = 0.05
    num_comparisons: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in CORRECTION_KINDS:
            raise ValidationError(
                f"correction must be one of {CORRECTION_KINDS}, got {self.kind!r}"
            )
        check_alpha(self.alpha)
        if self.num_comparisons is not None:
            if not isinstance(self.num_comparisons, int) or self.num_comparisons < 1:
                raise ValidationError(
                    f"num_comparisons must be a positive int or None, "
                    f"got {self.num_comparisons!r}"
                )

    def comparisons_for_pool(self, pool_m: int) -> int:
        if self.num_comparisons is not None:
            return self.num_comparisons
        return pool_m * (pool_m - 1) // 2

    def per_comparison_alpha(self, pool_m: int) -> float:
        """Level applied to one comparison considered on its own.

        For Holm this is the level of the strictest (first) step, which is
        what a single-pair evaluation must use to stay valid; the full
        step-down schedule only exists inside pairwise_report.
        """
        if self.kind == "none":
            return self.alpha
        return self.alpha / self.comparisons_for_pool(pool_m)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "num_comparisons": self.num_comparisons,
        }


def mean_ranks_statistic(
    mean_rank_a: float, mean_rank_b: float, m: int, n: int
) -> float:
    """Normal-form statistic z = (rbar_a - rbar_b) / sqrt(m(m+1)/(6n)).

    Signed: positive when a out-ranks b. m is the pool size the mean ranks
    were computed over, and is what makes the statistic pool-dependent.
    """
    if not isinstance(m, int) or m < 2:
        raise ValidationError(f"pool size m must be an int >= 2, got {m!r}")
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"dataset count n must be an int >= 1, got {n!r}")
    for label, value in (("mean_rank_a", mean_rank_a), ("mean_rank_b", mean_rank_b)):
        value = float(value)
        if not (1.0 <= value <= m):
            raise ValidationError(
                f"{label} must lie in [1, {m}] for a pool of {m}, got {value!r}"
            )
    se = math.sqrt(m * (m + 1) / (6.0 * n))
    return (float(mean_rank_a) - float(mean_rank_b)) / se


def mean_ranks_threshold(m: int, n: int, per_comparison_alpha: float) -> float:
    """Critical mean-rank difference z* sqrt(m(m+1)/(6n))."""
    z_star = normal_quantile(1.0 - per_comparison_alpha / 2.0)
    return z_star * math.sqrt(m * (m + 1) / (6.0 * n))


def mean_ranks_test(
    ranks: RankMatrix,
    pair: Sequence[str],
    policy: CorrectionPolicy = CorrectionPolicy(),
) -> TestOutcome:
    """Threshold-form mean-ranks test of one pair within a ranked pool.

    The family size comes from the policy (pool-derived unless pinned), so
    the same pair tested inside a bigger pool faces both a different
    threshold and different mean ranks. Under kind "holm" a single pair is
    held to the strictest step, which coincides with Bonferroni.
    """
    a, b = pair
    ia, ib = ranks.index(a), ranks.index(b)
    if ia == ib:
        raise ValidationError(f"pair must name two distinct algorithms, got {a!r} twice")
    m, n = ranks.m, ranks.n
    a_pc = policy.per_comparison_alpha(m)
    threshold = mean_ranks_threshold(m, n, a_pc)
    ra = float(ranks.mean_ranks[ia])
    rb = float(ranks.mean_ranks[ib])
    z = mean_ranks_statistic(ra, rb, m, n)
    statistic = abs(ra - rb)
    return TestOutcome(
        method="mean-ranks/threshold",
        statistic=statistic,
        p_value=None,
        alpha_effective=a_pc,
        reject=statistic >= threshold,
        detail={
            "pair": [a, b],
            "mean_rank_a": ra,
            "mean_rank_b": rb,
            "signed_difference": ra - rb,
            "pool_m": m,
            "n": n,
            "z_statistic": z,
            "critical_value": threshold,
            "num_comparisons": policy.comparisons_for_pool(m),
            "direction": ranks.direction,
        },
    )


def _paired_differences(
    perf: PerformanceMatrix, pair: Sequence[str]
) -> tuple[str, str, np.ndarray]:
    a, b = pair
    xa, xb = perf.row(a), perf.row(b)
    if a == b:
        raise ValidationError(f"pair must name two distinct algorithms, got {a!r} twice")
    return a, b, xa - xb


def sign_test(
    perf: PerformanceMatrix,
    pair: Sequence[str],
    alpha: float = 0.05,
    mode: str = "exact",
) -> TestOutcome:
    """Sign test on one pair: who wins on more datasets?

    Tied datasets (zero difference) are discarded; n_effective is the count
    that remain, and all-tied data raise DegenerateDataError. mode "exact"
    uses the exact binomial two-sided p; "normal-approx" uses
    z = (wins_a - wins_b) / sqrt(n_effective), the large-sample form.
    alpha is the per-comparison level, i.e. already corrected by the caller
    when the pair belongs to a family.
    """
    alpha = check_alpha(alpha)
    if mode not in ("exact", "normal-approx"):
        raise ValidationError(
            f"mode must be 'exact' or 'normal-approx', got {mode!r}"
        )
    a, b, d = _paired_differences(perf, pair)
    wins_a = int((d > 0).sum())
    wins_b = int((d < 0).sum())
    n_eff = wins_a + wins_b
    if n_eff == 0:
        raise DegenerateDataError(
            f"sign test undefined for ({a!r}, {b!r}): all {d.size} paired "
            f"differences are zero"
        )
    statistic = float(wins_a - wins_b)
    detail = {
        "pair": [a, b],
        "wins_a": wins_a,
        "wins_b": wins_b,
        "n_effective": n_eff,
        "zeros_discarded": int(d.size - n_eff),
        "mode": mode,
    }
    if mode == "exact":
        p = binomial_two_sided_p(wins_a, n_eff)
        method = "sign-exact/p-value"
    else:
        z = statistic / math.sqrt(n_eff)
        p = two_sided_normal_p(z)
        detail["z_statistic"] = z
        method = "sign-normal-approx/p-value"
    return TestOutcome(
        method=method,
        statistic=statistic,
        p_value=p,
        alpha_effective=alpha,
        reject=p <= alpha,
        detail=detail,
    )


def wilcoxon_signed_rank(
    perf: PerformanceMatrix,
    pair: Sequence[str],
    alpha: float = 0.05,
) -> TestOutcome:
    """Wilcoxon signed-rank test on one pair's differences d = a - b.

    Zero differences are discarded before ranking; |d| gets ascending
    midranks and W+ sums the ranks of positive d. Exact null table when the
    remaining sample is tie-free and within WILCOXON_EXACT_LIMIT, else the
    normal approximation with tie-corrected variance and a 0.5 continuity
    correction. detail["exact"] records which path produced the p-value.
    """
    alpha = check_alpha(alpha)
    a, b, d = _paired_differences(perf, pair)
    d_nz = d[d != 0]
    n_eff = int(d_nz.size)
    if n_eff == 0:
        raise DegenerateDataError(
            f"wilcoxon test undefined for ({a!r}, {b!r}): all {d.size} "
            f"paired differences are zero"
        )
    abs_d = np.abs(d_nz)
    r = midrank_1d(abs_d)
    w_plus = float(r[d_nz > 0].sum())
    total = n_eff * (n_eff + 1) / 2.0
    has_ties = np.unique(abs_d).size < n_eff
    detail = {
        "pair": [a, b],
        "n_effective": n_eff,
        "zeros_discarded": int(d.size - n_eff),
        "w_plus": w_plus,
        "w_minus": total - w_plus,
        "ties_in_abs_differences": bool(has_ties),
    }
    if not has_ties and n_eff <= WILCOXON_EXACT_LIMIT:
        table = wilcoxon_null_table(n_eff)
        p = table.two_sided_p(int(round(w_plus)))
        method = "wilcoxon-exact/p-value"
        detail["exact"] = True
    else:
        mu = n_eff * (n_eff + 1) / 4.0
        tie_term = 0.0
        if has_ties:
            _, counts = np.unique(abs_d, return_counts=True)
            t = counts.astype(float)
            tie_term = float(np.sum(t**3 - t)) / 2.0
        var = (n_eff * (n_eff + 1) * (2 * n_eff + 1) - tie_term) / 24.0
        z = max(0.0, abs(w_plus - mu) - 0.5) / math.sqrt(var)
        p = two_sided_normal_p(z)
        method = "wilcoxon-normal-approx/p-value"
        detail["exact"] = False
        detail["z_statistic"] = z
        detail["approximation_reason"] = (
            "ties in |d|" if has_ties else f"n_effective > {WILCOXON_EXACT_LIMIT}"
        )
    return TestOutcome(
        method=method,
        statistic=w_plus,
        p_value=p,
        alpha_effective=alpha,
        reject=p <= alpha,
        detail=detail,
    )


@dataclass(frozen=True)
class PairwiseEntry:
    """One row of a post-hoc report.

    Untestable pairs (degenerate data) keep their slot with note set and
    reject False, so families stay aligned across reports. p-value tests
    fill p_raw/p_adjusted; threshold tests fill critical_value instead and
    p_raw carries the informational normal approximation when available.
    """

    algo_a: str
    algo_b: str
    statistic: Optional[float]
    p_raw: Optional[float]
    p_adjusted: Optional[float]
    critical_value: Optional[float]
    reject: bool
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "algo_a": self.algo_a,
            "algo_b": self.algo_b,
            "statistic": self.statistic,
            "p_raw": self.p_raw,
            "p_adjusted": self.p_adjusted,
            "critical_value": self.critical_value,
            "reject": self.reject,
            "note": self.note,
        }


@dataclass(frozen=True, eq=False)
class PosthocReport:
    """All-pairs comparison under one test and one correction policy.

    Entries are ordered by pool index (i < j), deterministically. The
    correction arithmetic is recorded: num_comparisons is the family size
    used, per_comparison_alpha the level a lone comparison faced (for Holm,
    the strictest step).
    """

    test: str
    pool: tuple[str, ...]
    n_datasets: int
    policy: CorrectionPolicy
    num_comparisons: int
    per_comparison_alpha: float
    entries: tuple[PairwiseEntry, ...]
    caution: Optional[str] = None

    @property
    def rejected_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple((e.algo_a, e.algo_b) for e in self.entries if e.reject)

    def entry(self, a: str, b: str) -> PairwiseEntry:
        for e in self.entries:
            if {e.algo_a, e.algo_b} == {a, b}:
                return e
        raise ValidationError(f"no entry for pair ({a!r}, {b!r})")

    def to_dict(self) -> dict:
        return {
            "test": self.test,
            "pool": list(self.pool),
            "n_datasets": self.n_datasets,
            "policy": self.policy.to_dict(),
            "num_comparisons": self.num_comparisons,
            "per_comparison_alpha": self.per_comparison_alpha,
            "entries": [e.to_dict() for e in self.entries],
            "caution": self.caution,
        }


def _holm_adjust(p_values: list[float], family_size: int) -> list[float]:
    """Holm step-down adjusted p-values against a declared family size.

    family_size may exceed len(p_values) when some family members were
    untestable; multipliers then start higher, which is conservative.
    """
    order = sorted(range(len(p_values)), key=lambda i: p_values[i])
    adjusted = [0.0] * len(p_values)
    running = 0.0
    for step, idx in enumerate(order):
        mult = max(family_size - step, 1)
        running = max(running, min(1.0, mult * p_values[idx]))
        adjusted[idx] = running
    return adjusted


def pairwise_report(
    perf: PerformanceMatrix,
    test: str = "wilcoxon",
    policy: CorrectionPolicy = CorrectionPolicy(),
    direction: str = "higher-is-better",
) -> PosthocReport:
    """Compare every pair in the pool under one test and correction.

    Two-sided decisions do not depend on direction (win counts and rank
    sums just swap roles); direction only orients the reported mean ranks.
    Mean-ranks under "none"/"bonferroni" keeps its native threshold form;
    under "holm" the step-down runs on the two-sided normal p-values of the
    z statistics, since a threshold schedule has no per-step analogue.
    """
    test = normalize_test_id(test)
    m = perf.m
    c = policy.comparisons_for_pool(m)
    a_pc = policy.per_comparison_alpha(m)
    alpha = policy.alpha
    names = perf.algorithm_names
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]

    stats: list[Optional[float]] = []
    p_raws: list[Optional[float]] = []
    notes: list[Optional[str]] = []
    critical: list[Optional[float]] = []

    if test == "mean-ranks":
        rm = rank_columns(perf, direction)
        threshold = mean_ranks_threshold(m, perf.n, a_pc)
        for i, j in pairs:
            diff = abs(float(rm.mean_ranks[i]) - float(rm.mean_ranks[j]))
            z = mean_ranks_statistic(
                float(rm.mean_ranks[i]), float(rm.mean_ranks[j]), m, perf.n
            )
            stats.append(diff)
            p_raws.append(two_sided_normal_p(z))
            critical.append(threshold if policy.kind != "holm" else None)
            notes.append(None)
    else:
        for i, j in pairs:
            pair = (names[i], names[j])
            try:
                if test == "sign-exact":
                    out = sign_test(perf, pair, a_pc, "exact")
                elif test == "sign-normal-approx":
                    out = sign_test(perf, pair, a_pc, "normal-approx")
                else:
                    out = wilcoxon_signed_rank(perf, pair, a_pc)
            except DegenerateDataError as exc:
                stats.append(None)
                p_raws.append(None)
                notes.append(f"untestable: {exc}")
                critical.append(None)
                continue
            stats.append(out.statistic)
            p_raws.append(out.p_value)
            notes.append(
                "normal approximation ({})".format(out.detail["approximation_reason"])
                if out.detail.get("exact") is False
                else None
            )
            critical.append(None)

    testable = [k for k, p in enumerate(p_raws) if p is not None]
    p_adj: list[Optional[float]] = [None] * len(pairs)
    rejects = [False] * len(pairs)

    if test == "mean-ranks" and policy.kind != "holm":
        for k in testable:
            rejects[k] = stats[k] >= critical[k]
    elif policy.kind == "none":
        for k in testable:
            p_adj[k] = p_raws[k]
            rejects[k] = p_raws[k] <= alpha
    elif policy.kind == "bonferroni":
        for k in testable:
            p_adj[k] = min(1.0, c * p_raws[k])
            rejects[k] = p_adj[k] <= alpha
    else:  # holm
        adjusted = _holm_adjust([p_raws[k] for k in testable], c)
        for k, adj in zip(testable, adjusted):
            p_adj[k] = adj
            rejects[k] = adj <= alpha

    entries = tuple(
        PairwiseEntry(
            algo_a=names[i],
            algo_b=names[j],
            statistic=stats[k],
            p_raw=p_raws[k],
            p_adjusted=p_adj[k],
            critical_value=critical[k],
            reject=rejects[k],
            note=notes[k],
        )
        for k, (i, j) in enumerate(pairs)
    )
    return PosthocReport(
        test=test,
        pool=names,
        n_datasets=perf.n,
        policy=policy,
        num_comparisons=c,
        per_comparison_alpha=a_pc,
        entries=entries,
        caution=MEAN_RANKS_CAUTION if test == "mean-ranks" else None,
    )


def pairwise_outcome(
    perf: PerformanceMatrix,
    pair: Sequence[str],
    test: str,
    policy: CorrectionPolicy = CorrectionPolicy(),
    direction: str = "higher-is-better",
) -> TestOutcome:
    """One pair evaluated as a member of this pool's comparison family.

    The per-comparison level is derived from the pool via the policy; this
    is the building block the subset-stability sweep reuses. Holm degrades
    to its strictest step here (single decision, no schedule).
    """
    test = normalize_test_id(test)
    if test == "mean-ranks":
        return mean_ranks_test(rank_columns(perf, direction), pair, policy)
    a_pc = policy.per_comparison_alpha(perf.m)
    if test == "sign-exact":
        return sign_test(perf, pair, a_pc, "exact")
    if test == "sign-normal-approx":
        return sign_test(perf, pair, a_pc, "normal-approx")
    return wilcoxon_signed_rank(perf, pair, a_pc)
