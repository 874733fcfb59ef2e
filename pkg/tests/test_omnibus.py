"""Omnibus screen: worked values, scipy agreement, structural invariances."""

import numpy as np
import pytest
from scipy import stats

from rankjudge import ValidationError, friedman, sign_test

from conftest import make_matrix, random_matrix


def test_benchmark_statistic_exact(benchmark):
    out = friedman(benchmark)
    assert out.statistic == 48.0
    assert out.p_value == pytest.approx(9.437836360697738e-10, rel=1e-12)
    assert out.reject
    assert out.method == "friedman/p-value"
    assert out.detail["dof"] == 4
    assert out.detail["rank_sums"] == [40.0, 70.0, 30.0, 70.0, 90.0]


def test_constant_matrix_is_uninformative():
    out = friedman(make_matrix(np.full((4, 6), 3.3)))
    assert out.statistic == 0.0
    assert out.p_value == 1.0
    assert not out.reject


def test_against_scipy():
    # tie-free draws: scipy additionally applies a tie correction the plain
    # statistic deliberately omits, so agreement is only defined without ties
    rng = np.random.default_rng(21)
    for _ in range(60):
        m, n = int(rng.integers(3, 7)), int(rng.integers(3, 25))
        perf = random_matrix(rng, m, n, tie_free=True)
        ours = friedman(perf)
        ref_stat, ref_p = stats.friedmanchisquare(*perf.values)
        assert ours.statistic == pytest.approx(ref_stat, rel=1e-10, abs=1e-12)
        assert ours.p_value == pytest.approx(ref_p, rel=1e-9, abs=1e-300)


def test_direction_invariant(benchmark):
    hi = friedman(benchmark, direction="higher-is-better")
    lo = friedman(benchmark, direction="lower-is-better")
    assert hi.statistic == lo.statistic
    assert hi.p_value == lo.p_value


def test_row_relabeling_invariant(benchmark):
    shuffled = make_matrix(
        benchmark.values[::-1], algos=benchmark.algorithm_names[::-1]
    )
    assert friedman(shuffled).statistic == friedman(benchmark).statistic


def test_monotone_transform_invariant():
    rng = np.random.default_rng(9)
    perf = random_matrix(rng, 4, 15, tie_free=True)
    warped = make_matrix(np.exp(perf.values))
    assert friedman(perf).statistic == friedman(warped).statistic


def test_statistic_non_negative():
    rng = np.random.default_rng(17)
    for _ in range(40):
        out = friedman(random_matrix(rng, int(rng.integers(2, 6)), int(rng.integers(1, 10))))
        assert out.statistic >= 0.0
        assert 0.0 <= out.p_value <= 1.0


def test_two_algorithms_collapse_to_sign_test():
    # On tie-free data the m=2 screen is the squared sign-test z statistic,
    # and its chi-square(1) tail equals the two-sided normal tail.
    rng = np.random.default_rng(31)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        perf = random_matrix(rng, 2, n, tie_free=True)
        f = friedman(perf)
        s = sign_test(perf, ("a0", "a1"), mode="normal-approx")
        assert abs(f.p_value - s.p_value) <= 1e-10
        assert f.statistic == pytest.approx(
            (s.statistic / np.sqrt(n)) ** 2, rel=1e-9, abs=1e-12
        )


def test_alpha_validation(benchmark):
    with pytest.raises(ValidationError):
        friedman(benchmark, alpha=0.0)
    with pytest.raises(ValidationError):
        friedman(benchmark, alpha=1.0)
