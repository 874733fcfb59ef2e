"""Ranking layer: midranks, their exactness, and matrix plumbing."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp
from scipy import stats

from rankjudge import (
    PerformanceMatrix,
    UnknownNameError,
    ValidationError,
    midrank_1d,
    midrank_columns,
    rank_columns,
    restrict,
)

from conftest import make_matrix


class TestMidranks:
    def test_benchmark_first_column(self, benchmark):
        # (50, 80, 55, 60, 65) -> best=80 gets rank 5, worst=50 gets rank 1
        ranks = rank_columns(benchmark).ranks
        assert list(ranks[:, 0]) == [1.0, 5.0, 2.0, 3.0, 4.0]

    def test_all_tied_column(self):
        perf = make_matrix([[7.0], [7.0], [7.0]])
        ranks = rank_columns(perf).ranks
        assert list(ranks[:, 0]) == [2.0, 2.0, 2.0]

    def test_partial_tie_midrank(self):
        # (1, 3, 3) -> ranks (1, 2.5, 2.5)
        r = midrank_columns(np.array([[1.0], [3.0], [3.0]]))
        assert list(r[:, 0]) == [1.0, 2.5, 2.5]

    def test_benchmark_mean_ranks(self, benchmark):
        rm = rank_columns(benchmark)
        assert rm.mean_rank("A") == 2.0
        assert rm.mean_rank("B") == 3.5
        assert rm.mean_rank("C") == 1.5
        assert rm.mean_rank("D") == 3.5
        assert rm.mean_rank("E") == 4.5
        assert list(rm.rank_sums) == [40.0, 70.0, 30.0, 70.0, 90.0]

    def test_lower_is_better_flips(self, benchmark):
        hi = rank_columns(benchmark, "higher-is-better").ranks
        lo = rank_columns(benchmark, "lower-is-better").ranks
        m = benchmark.m
        assert np.array_equal(lo, m + 1 - hi)

    def test_matches_scipy_rankdata(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            m, n = int(rng.integers(2, 9)), int(rng.integers(1, 12))
            x = np.round(rng.normal(size=(m, n)) * 2)
            ours = midrank_columns(x)
            ref = np.column_stack([stats.rankdata(x[:, j]) for j in range(n)])
            assert np.array_equal(ours, ref)

    def test_midrank_1d_matches_scipy(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a = np.round(rng.normal(size=int(rng.integers(1, 30))) * 3)
            assert np.array_equal(midrank_1d(a), stats.rankdata(a))

    def test_bad_direction(self, benchmark):
        with pytest.raises(ValidationError):
            rank_columns(benchmark, "sideways")


# Column sums are halves of small integers; equality below is exact, not
# approximate, which downstream statistics rely on.
@settings(max_examples=100, deadline=None)
@given(
    values=hnp.arrays(
        dtype=np.float64,
        shape=st.tuples(st.integers(2, 10), st.integers(1, 12)),
        elements=st.integers(-5, 5).map(float),  # heavy ties on purpose
    )
)
def test_column_sums_exact(values):
    ranks = midrank_columns(values)
    m = values.shape[0]
    assert np.all(ranks.sum(axis=0) == m * (m + 1) / 2.0)


@settings(max_examples=60, deadline=None)
@given(
    values=hnp.arrays(
        dtype=np.int64,
        shape=st.tuples(st.integers(2, 6), st.integers(1, 8)),
        elements=st.integers(-50, 50),
    )
)
def test_monotone_transform_invariance(values):
    # Ranks see order only: a strictly increasing map changes nothing.
    # Integer inputs keep the map injective in float64, so ties survive
    # the transform exactly.
    values = values.astype(np.float64)
    transformed = np.exp(values / 25.0) + 3.0
    assert np.array_equal(midrank_columns(values), midrank_columns(transformed))


class TestPerformanceMatrix:
    def test_shape_and_names(self, benchmark):
        assert benchmark.m == 5
        assert benchmark.n == 20
        assert benchmark.algorithm_names == ("A", "B", "C", "D", "E")

    def test_values_read_only(self, benchmark):
        with pytest.raises(ValueError):
            benchmark.values[0, 0] = 99.0

    def test_source_array_detached(self):
        src = np.ones((2, 3))
        perf = make_matrix(src)
        src[0, 0] = 42.0
        assert perf.values[0, 0] == 1.0

    def test_non_finite_names_offending_cell(self):
        values = [[1.0, 2.0], [3.0, float("nan")]]
        with pytest.raises(ValidationError, match=r"'a1'.*'d1'"):
            make_matrix(values)

    def test_single_algorithm_rejected(self):
        with pytest.raises(ValidationError, match="two algorithms"):
            make_matrix([[1.0, 2.0]])

    def test_no_datasets_rejected(self):
        with pytest.raises(ValidationError):
            PerformanceMatrix(("a", "b"), (), np.empty((2, 0)))

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            make_matrix([[1.0], [2.0]], algos=("x", "x"))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValidationError, match="shape"):
            PerformanceMatrix(("a", "b"), ("d0",), np.ones((2, 2)))

    def test_unknown_name(self, benchmark):
        with pytest.raises(UnknownNameError):
            benchmark.row("Z")


class TestRestrict:
    def test_keeps_rows_in_given_order(self, benchmark):
        sub = restrict(benchmark, ("B", "A"))
        assert sub.algorithm_names == ("B", "A")
        assert np.array_equal(sub.values[0], benchmark.row("B"))
        assert np.array_equal(sub.values[1], benchmark.row("A"))
        assert sub.dataset_names == benchmark.dataset_names

    def test_pair_reranks_from_scratch(self, benchmark):
        rm = rank_columns(restrict(benchmark, ("A", "B")))
        # head-to-head the pair splits 10-10, so both average 1.5
        assert rm.mean_rank("A") == 1.5
        assert rm.mean_rank("B") == 1.5

    def test_full_subset_is_identity(self, benchmark):
        sub = restrict(benchmark, benchmark.algorithm_names)
        assert np.array_equal(sub.values, benchmark.values)

    def test_too_small(self, benchmark):
        with pytest.raises(ValidationError):
            restrict(benchmark, ("A",))

    def test_duplicates(self, benchmark):
        with pytest.raises(ValidationError):
            restrict(benchmark, ("A", "A"))

    def test_unknown_member(self, benchmark):
        with pytest.raises(UnknownNameError):
            restrict(benchmark, ("A", "Z"))
