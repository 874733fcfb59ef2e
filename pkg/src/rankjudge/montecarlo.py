"""Monte Carlo estimation of rejection probabilities.

Scenarios draw independent Gaussian scores for every (algorithm, dataset)
cell. Determinism contract: replicate r uses its own counter-based
substream, Philox keyed by (seed, r), and draws the full m x n matrix of
standard normals row-major before scaling. Estimates therefore do not
depend on evaluation order, batching, or how many other replicates ran,
and replicate_rejects(scenario, r) reproduces any single replicate.

estimate_power tracks one target pair through lean decision closures that
call the exact same kernels as the public tests (binomial tail, Wilcoxon
table, midranks, normal quantile); a test pins closure verdicts to the
public test functions. estimate_fwer runs the full pairwise report each
replicate and counts replicates with at least one rejection inside a
subset of algorithms whose means are identical by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .distributions import (
    WILCOXON_EXACT_LIMIT,
    binomial_two_sided_p,
    normal_cdf,
    two_sided_normal_p,
    wilcoxon_null_table,
)
from .errors import ValidationError
from .posthoc import (
    CorrectionPolicy,
    mean_ranks_threshold,
    normalize_test_id,
    pairwise_report,
)
from .ranking import PerformanceMatrix, midrank_1d, midrank_columns

_MAX_SEED = 2**64


@dataclass(frozen=True)
class GaussianAlgorithm:
    """One synthetic algorithm: scores ~ Normal(mean, sd) i.i.d. per dataset."""

    name: str
    mean: float
    sd: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean):
            raise ValidationError(f"mean must be finite, got {self.mean!r}")
        if not (math.isfinite(self.sd) and self.sd > 0):
            raise ValidationError(f"sd must be finite and > 0, got {self.sd!r}")


@dataclass(frozen=True)
class PowerScenario:
    """A fully specified simulation: pool, sample size, test, correction,
    replication plan and RNG seed.

    target_pair is the pair whose rejection rate estimate_power tracks;
    equal_mean_subset marks algorithms with identical means among which any
    rejection is a family-wise error for estimate_fwer. The correction
    policy carries alpha; its default here is "none" (single uncorrected
    comparison), matching the plain power question.
    """

    algorithms: tuple[GaussianAlgorithm, ...]
    n_datasets: int
    test: str
    seed: int
    target_pair: Optional[tuple[str, str]] = None
    policy: CorrectionPolicy = field(
        default_factory=lambda: CorrectionPolicy(kind="none")
    )
    replicates: int = 100_000
    equal_mean_subset: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "algorithms", tuple(self.algorithms)
        )
        names = [a.name for a in self.algorithms]
        if len(names) < 2:
            raise ValidationError("scenario needs at least two algorithms")
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate algorithm names in scenario: {names}")
        if not isinstance(self.n_datasets, int) or self.n_datasets < 1:
            raise ValidationError(
                f"n_datasets must be a positive int, got {self.n_datasets!r}"
            )
        if not isinstance(self.replicates, int) or self.replicates < 1:
            raise ValidationError(
                f"replicates must be a positive int, got {self.replicates!r}"
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < _MAX_SEED:
            raise ValidationError(
                f"seed must be an int in [0, 2^64), got {self.seed!r}"
            )
        object.__setattr__(self, "test", normalize_test_id(self.test))
        if self.target_pair is not None:
            a, b = self.target_pair
            if a == b:
                raise ValidationError(f"target pair names {a!r} twice")
            for nm in (a, b):
                if nm not in names:
                    raise ValidationError(
                        f"target pair member {nm!r} not in scenario pool {names}"
                    )
            object.__setattr__(self, "target_pair", (a, b))
        if self.equal_mean_subset is not None:
            subset = tuple(self.equal_mean_subset)
            if len(subset) < 2:
                raise ValidationError(
                    "equal_mean_subset needs at least two algorithms"
                )
            if len(set(subset)) != len(subset):
                raise ValidationError(f"duplicate names in equal_mean_subset: {subset}")
            by_name = {a.name: a for a in self.algorithms}
            for nm in subset:
                if nm not in by_name:
                    raise ValidationError(
                        f"equal_mean_subset member {nm!r} not in scenario pool"
                    )
            means = {by_name[nm].mean for nm in subset}
            if len(means) != 1:
                raise ValidationError(
                    f"equal_mean_subset means differ: "
                    f"{sorted((nm, by_name[nm].mean) for nm in subset)}"
                )
            object.__setattr__(self, "equal_mean_subset", subset)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.algorithms)

    @property
    def m(self) -> int:
        return len(self.algorithms)

    def to_dict(self) -> dict:
        return {
            "algorithms": [
                {"name": a.name, "mean": a.mean, "sd": a.sd}
                for a in self.algorithms
            ],
            "n_datasets": self.n_datasets,
            "test": self.test,
            "seed": self.seed,
            "target_pair": list(self.target_pair) if self.target_pair else None,
            "policy": self.policy.to_dict(),
            "replicates": self.replicates,
            "equal_mean_subset": (
                list(self.equal_mean_subset) if self.equal_mean_subset else None
            ),
        }


@dataclass(frozen=True)
class PowerEstimate:
    """Rejection-rate estimate with its binomial standard error."""

    quantity: str  # "power" or "fwer"
    rejections: int
    replicates: int
    estimate: float
    std_error: float
    seed: int

    @classmethod
    def from_counts(
        cls, quantity: str, rejections: int, replicates: int, seed: int
    ) -> "PowerEstimate":
        est = rejections / replicates
        se = math.sqrt(est * (1.0 - est) / replicates)
        return cls(
            quantity=quantity,
            rejections=rejections,
            replicates=replicates,
            estimate=est,
            std_error=se,
            seed=seed,
        )

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "rejections": self.rejections,
            "replicates": self.replicates,
            "estimate": self.estimate,
            "std_error": self.std_error,
            "seed": self.seed,
        }


def replicate_values(scenario: PowerScenario, index: int) -> np.ndarray:
    """The (m, n) score matrix of replicate `index`, reproducible in isolation."""
    if not isinstance(index, int) or not 0 <= index < _MAX_SEED:
        raise ValidationError(f"replicate index must be an int in [0, 2^64), got {index!r}")
    means = np.array([a.mean for a in scenario.algorithms])
    sds = np.array([a.sd for a in scenario.algorithms])
    return _replicate_values(scenario.seed, index, means, sds, scenario.n_datasets)


def _replicate_values(
    seed: int, index: int, means: np.ndarray, sds: np.ndarray, n: int
) -> np.ndarray:
    key = np.array([seed, index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    z = rng.standard_normal((means.size, n))
    return means[:, None] + sds[:, None] * z


def _build_decider(scenario: PowerScenario) -> Callable[[np.ndarray], bool]:
    """Per-replicate decision closure for the target pair.

    Thresholds, quantiles and null tables are resolved once, here; the
    closure then only counts wins or sums ranks per matrix. Degenerate
    draws (all differences zero; measure-zero under Gaussian scenarios)
    count as non-rejections rather than raising mid-simulation.
    """
    if scenario.target_pair is None:
        raise ValidationError("scenario has no target_pair; set one to estimate power")
    names = list(scenario.names)
    i = names.index(scenario.target_pair[0])
    j = names.index(scenario.target_pair[1])
    m, n = scenario.m, scenario.n_datasets
    a_pc = scenario.policy.per_comparison_alpha(m)
    test = scenario.test

    if test == "mean-ranks":
        threshold = mean_ranks_threshold(m, n, a_pc)

        def decide(x: np.ndarray) -> bool:
            mr = midrank_columns(x).mean(axis=1)
            return bool(abs(mr[i] - mr[j]) >= threshold)

        return decide

    if test in ("sign-exact", "sign-normal-approx"):
        exact = test == "sign-exact"

        def decide(x: np.ndarray) -> bool:
            d = x[i] - x[j]
            wins_a = int((d > 0).sum())
            wins_b = int((d < 0).sum())
            n_eff = wins_a + wins_b
            if n_eff == 0:
                return False
            if exact:
                p = binomial_two_sided_p(wins_a, n_eff)
            else:
                p = two_sided_normal_p((wins_a - wins_b) / math.sqrt(n_eff))
            return p <= a_pc

        return decide

    # wilcoxon: cache the exact two-sided p lookup per effective n
    p_tables: dict[int, tuple[float, ...]] = {}

    def _p_table(n_eff: int) -> tuple[float, ...]:
        tab = p_tables.get(n_eff)
        if tab is None:
            null = wilcoxon_null_table(n_eff)
            tab = tuple(null.two_sided_p(w) for w in range(null.max_sum + 1))
            p_tables[n_eff] = tab
        return tab

    def decide(x: np.ndarray) -> bool:
        d = x[i] - x[j]
        d_nz = d[d != 0]
        n_eff = int(d_nz.size)
        if n_eff == 0:
            return False
        abs_d = np.abs(d_nz)
        r = midrank_1d(abs_d)
        w_plus = float(r[d_nz > 0].sum())
        tie_free = np.unique(abs_d).size == n_eff
        if tie_free and n_eff <= WILCOXON_EXACT_LIMIT:
            p = _p_table(n_eff)[int(round(w_plus))]
        else:
            mu = n_eff * (n_eff + 1) / 4.0
            tie_term = 0.0
            if not tie_free:
                _, counts = np.unique(abs_d, return_counts=True)
                t = counts.astype(float)
                tie_term = float(np.sum(t**3 - t)) / 2.0
            var = (n_eff * (n_eff + 1) * (2 * n_eff + 1) - tie_term) / 24.0
            z = max(0.0, abs(w_plus - mu) - 0.5) / math.sqrt(var)
            p = two_sided_normal_p(z)
        return p <= a_pc

    return decide


def replicate_rejects(scenario: PowerScenario, index: int) -> bool:
    """Target-pair verdict of one replicate, independent of all others."""
    decide = _build_decider(scenario)
    return decide(replicate_values(scenario, index))


def estimate_power(scenario: PowerScenario) -> PowerEstimate:
    """Fraction of replicates on which the configured test rejects the
    target pair. With equal target means this estimates the per-pair type I
    error instead; the arithmetic is identical."""
    decide = _build_decider(scenario)
    means = np.array([a.mean for a in scenario.algorithms])
    sds = np.array([a.sd for a in scenario.algorithms])
    n = scenario.n_datasets
    rejections = 0
    for r in range(scenario.replicates):
        x = _replicate_values(scenario.seed, r, means, sds, n)
        if decide(x):
            rejections += 1
    return PowerEstimate.from_counts(
        "power", rejections, scenario.replicates, scenario.seed
    )


def family_error_in_replicate(scenario: PowerScenario, index: int) -> bool:
    """Does replicate `index` reject any pair inside the equal-mean subset?

    Runs the full pairwise report (all pairs, correction applied) exactly
    as a user of the library would, then looks only at pairs whose two
    members both sit in equal_mean_subset.
    """
    if scenario.equal_mean_subset is None:
        raise ValidationError(
            "scenario has no equal_mean_subset; set one to estimate FWER"
        )
    x = replicate_values(scenario, index)
    return _family_error(scenario, x, frozenset(scenario.equal_mean_subset))


_DATASET_LABEL_CACHE: dict[int, tuple[str, ...]] = {}


def _dataset_labels(n: int) -> tuple[str, ...]:
    labels = _DATASET_LABEL_CACHE.get(n)
    if labels is None:
        labels = tuple(f"d{k + 1}" for k in range(n))
        _DATASET_LABEL_CACHE[n] = labels
    return labels


def _family_error(
    scenario: PowerScenario, x: np.ndarray, subset: frozenset[str]
) -> bool:
    perf = PerformanceMatrix(
        algorithm_names=scenario.names,
        dataset_names=_dataset_labels(scenario.n_datasets),
        values=x,
    )
    report = pairwise_report(perf, scenario.test, scenario.policy)
    return any(
        e.reject and e.algo_a in subset and e.algo_b in subset
        for e in report.entries
    )


def analytic_sign_power(scenario: PowerScenario) -> float:
    """Closed-form rejection probability of the sign test under the scenario.

    For Gaussian scores the per-dataset win indicator of the target pair is
    Bernoulli with q = Phi((mean_a - mean_b) / sqrt(sd_a^2 + sd_b^2)), so
    the win count is Binomial(n, q) and the power is the binomial mass on
    the test's rejection region (zero differences have probability zero).
    Cross-checks estimate_power without any simulation; sign tests only.
    """
    if scenario.test not in ("sign-exact", "sign-normal-approx"):
        raise ValidationError(
            f"analytic power is available for sign tests only, "
            f"got {scenario.test!r}"
        )
    if scenario.target_pair is None:
        raise ValidationError("scenario has no target_pair")
    by_name = {a.name: a for a in scenario.algorithms}
    a = by_name[scenario.target_pair[0]]
    b = by_name[scenario.target_pair[1]]
    q = normal_cdf((a.mean - b.mean) / math.sqrt(a.sd**2 + b.sd**2))
    n = scenario.n_datasets
    a_pc = scenario.policy.per_comparison_alpha(scenario.m)
    if scenario.test == "sign-exact":
        rejects = [k for k in range(n + 1) if binomial_two_sided_p(k, n) <= a_pc]
    else:
        rejects = [
            k
            for k in range(n + 1)
            if two_sided_normal_p((2 * k - n) / math.sqrt(n)) <= a_pc
        ]
    return float(
        sum(math.comb(n, k) * q**k * (1.0 - q) ** (n - k) for k in rejects)
    )


def estimate_fwer(scenario: PowerScenario) -> PowerEstimate:
    """Family-wise error rate over the equal-mean subset.

    A replicate counts as an error when the full pairwise report rejects at
    least one pair lying entirely inside equal_mean_subset. Those nulls are
    true by construction (identical means were validated), so the estimate
    is the probability of at least one false rejection in the family.
    """
    if scenario.equal_mean_subset is None:
        raise ValidationError(
            "scenario has no equal_mean_subset; set one to estimate FWER"
        )
    subset = frozenset(scenario.equal_mean_subset)
    means = np.array([a.mean for a in scenario.algorithms])
    sds = np.array([a.sd for a in scenario.algorithms])
    n = scenario.n_datasets
    errors = 0
    for r in range(scenario.replicates):
        x = _replicate_values(scenario.seed, r, means, sds, n)
        if _family_error(scenario, x, subset):
            errors += 1
    return PowerEstimate.from_counts(
        "fwer", errors, scenario.replicates, scenario.seed
    )
