"""Built-in demonstration data.

The five-algorithm benchmark is a hand-built accuracy table over 20
datasets engineered so that A and B tie pairwise (each wins on exactly 10
datasets, by the same margin) while C, D, E pull the mean ranks apart. On
it the sign test calls A vs B a dead heat, yet the mean-ranks test rejects
the pair at family-corrected alpha = 0.05. The Gaussian scenarios replay
the same contrast as power/FWER simulations.
"""

from __future__ import annotations

import numpy as np

from .montecarlo import GaussianAlgorithm, PowerScenario
from .posthoc import CorrectionPolicy
from .ranking import PerformanceMatrix

DEFAULT_SEED = 12345

ALGORITHMS = ("A", "B", "C", "D", "E")

# Accuracy (percent) on the first 10 and the last 10 datasets.
_BLOCK_SCORES = {
    "A": (50.0, 80.0),
    "B": (80.0, 50.0),
    "C": (55.0, 45.0),
    "D": (60.0, 85.0),
    "E": (65.0, 90.0),
}


def five_algorithm_benchmark() -> PerformanceMatrix:
    """The 5 x 20 accuracy table (higher is better).

    Mean ranks come out (2.0, 3.5, 1.5, 3.5, 4.5) for (A, B, C, D, E);
    |mean rank A - mean rank B| = 1.5 while their pairwise record is 10-10.
    """
    values = np.array(
        [[lo] * 10 + [hi] * 10 for lo, hi in (_BLOCK_SCORES[a] for a in ALGORITHMS)]
    )
    return PerformanceMatrix(
        algorithm_names=ALGORITHMS,
        dataset_names=tuple(f"d{k + 1:02d}" for k in range(20)),
        values=values,
    )


def contrast_pair() -> tuple[str, str]:
    """The pair the benchmark is built around: tied head-to-head, far apart
    in mean ranks."""
    return ("A", "B")


_SCENARIO_MEANS = {"A": 0.0, "B": 1.5, "C": 5.0, "D": 6.0, "E": 7.0}


def separated_pool_scenario(
    test: str,
    replicates: int = 100_000,
    seed: int = DEFAULT_SEED,
    n_datasets: int = 20,
) -> PowerScenario:
    """Five well-separated Gaussians; the question is A vs B (means 1.5 apart).

    C, D, E are irrelevant to the A-B comparison but dominate both, which
    compresses the A-B mean-rank gap: pairwise tests see the 1.5-sigma
    separation, the mean-ranks test mostly does not.
    """
    return PowerScenario(
        algorithms=tuple(
            GaussianAlgorithm(name, _SCENARIO_MEANS[name]) for name in ALGORITHMS
        ),
        n_datasets=n_datasets,
        test=test,
        seed=seed,
        target_pair=("A", "B"),
        policy=CorrectionPolicy(kind="none", alpha=0.05),
        replicates=replicates,
    )


def all_equal_scenario(
    test: str = "sign-exact",
    replicates: int = 100_000,
    seed: int = DEFAULT_SEED,
    alpha: float = 0.05,
    n_datasets: int = 20,
) -> PowerScenario:
    """Five identical Normal(0, 1) algorithms: every rejection is an error."""
    return PowerScenario(
        algorithms=tuple(GaussianAlgorithm(name, 0.0) for name in ALGORITHMS),
        n_datasets=n_datasets,
        test=test,
        seed=seed,
        policy=CorrectionPolicy(kind="bonferroni", alpha=alpha),
        replicates=replicates,
        equal_mean_subset=ALGORITHMS,
    )


def outlier_pool_scenario(
    test: str = "mean-ranks",
    replicates: int = 100_000,
    seed: int = DEFAULT_SEED,
    alpha: float = 0.05,
    n_datasets: int = 20,
) -> PowerScenario:
    """Four identical Normal(0, 1) algorithms plus one runaway Normal(10, 1).

    The interesting quantity is the family-wise error among the four equal
    ones: the outlier shifts everyone's ranks, so pool-sensitive tests can
    behave very differently here than under all_equal_scenario.
    """
    algorithms = tuple(GaussianAlgorithm(name, 0.0) for name in ("A", "B", "C", "D"))
    algorithms += (GaussianAlgorithm("E", 10.0),)
    return PowerScenario(
        algorithms=algorithms,
        n_datasets=n_datasets,
        test=test,
        seed=seed,
        policy=CorrectionPolicy(kind="bonferroni", alpha=alpha),
        replicates=replicates,
        equal_mean_subset=("A", "B", "C", "D"),
    )
