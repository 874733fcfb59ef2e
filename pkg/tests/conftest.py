import numpy as np
import pytest

from rankjudge import PerformanceMatrix, five_algorithm_benchmark


@pytest.fixture
def benchmark() -> PerformanceMatrix:
    return five_algorithm_benchmark()


def make_matrix(values, algos=None, dsets=None) -> PerformanceMatrix:
    """Build a PerformanceMatrix with auto-generated names."""
    values = np.asarray(values, dtype=float)
    m, n = values.shape
    return PerformanceMatrix(
        algorithm_names=tuple(algos) if algos else tuple(f"a{i}" for i in range(m)),
        dataset_names=tuple(dsets) if dsets else tuple(f"d{j}" for j in range(n)),
        values=values,
    )


def random_matrix(rng, m, n, tie_free=False) -> PerformanceMatrix:
    """Random Gaussian matrix; rounding induces ties unless tie_free."""
    x = rng.normal(size=(m, n))
    if not tie_free:
        x = np.round(x * 2.0)
    return make_matrix(x)
