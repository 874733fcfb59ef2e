"""rankjudge: rank-based comparison of algorithms over benchmark datasets.

Workflow: build a PerformanceMatrix (or load_csv one), screen it with
friedman, then compare pairs with pairwise_report. The mean-ranks post-hoc
test carries a caution for a reason; subset_stability quantifies it, and
estimate_power / estimate_fwer measure the consequences on synthetic
Gaussian scenarios, deterministically per seed.
"""

from .distributions import (
    WILCOXON_EXACT_LIMIT,
    WilcoxonNullTable,
    binomial_two_sided_p,
    chi_square_sf,
    normal_cdf,
    normal_quantile,
    two_sided_normal_p,
    wilcoxon_null_table,
)
from .errors import (
    DegenerateDataError,
    ExactLimitError,
    ParseError,
    UnknownNameError,
    ValidationError,
)
from .fixtures import (
    DEFAULT_SEED,
    all_equal_scenario,
    contrast_pair,
    five_algorithm_benchmark,
    outlier_pool_scenario,
    separated_pool_scenario,
)
from .montecarlo import (
    GaussianAlgorithm,
    PowerEstimate,
    PowerScenario,
    analytic_sign_power,
    estimate_fwer,
    estimate_power,
    family_error_in_replicate,
    replicate_rejects,
    replicate_values,
)
from .omnibus import TestOutcome, friedman
from .posthoc import (
    MEAN_RANKS_CAUTION,
    CorrectionPolicy,
    PairwiseEntry,
    PosthocReport,
    mean_ranks_statistic,
    mean_ranks_test,
    mean_ranks_threshold,
    pairwise_outcome,
    pairwise_report,
    sign_test,
    wilcoxon_signed_rank,
)
from .ranking import (
    PerformanceMatrix,
    RankMatrix,
    midrank_1d,
    midrank_columns,
    rank_columns,
    restrict,
)
from .render import parse_structured, render_structured, render_text
from .stability import PoolDecision, StabilityReport, subset_stability
from .tableio import load_csv
from .cli import reproduce_example, run_analysis

__version__ = "0.1.0"

__all__ = [
    "WILCOXON_EXACT_LIMIT",
    "WilcoxonNullTable",
    "binomial_two_sided_p",
    "chi_square_sf",
    "normal_cdf",
    "normal_quantile",
    "two_sided_normal_p",
    "wilcoxon_null_table",
    "DegenerateDataError",
    "ExactLimitError",
    "ParseError",
    "UnknownNameError",
    "ValidationError",
    "DEFAULT_SEED",
    "all_equal_scenario",
    "contrast_pair",
    "five_algorithm_benchmark",
    "outlier_pool_scenario",
    "separated_pool_scenario",
    "GaussianAlgorithm",
    "PowerEstimate",
    "PowerScenario",
    "analytic_sign_power",
    "estimate_fwer",
    "estimate_power",
    "family_error_in_replicate",
    "replicate_rejects",
    "replicate_values",
    "TestOutcome",
    "friedman",
    "MEAN_RANKS_CAUTION",
    "CorrectionPolicy",
    "PairwiseEntry",
    "PosthocReport",
    "mean_ranks_statistic",
    "mean_ranks_test",
    "mean_ranks_threshold",
    "pairwise_outcome",
    "pairwise_report",
    "sign_test",
    "wilcoxon_signed_rank",
    "PerformanceMatrix",
    "RankMatrix",
    "midrank_1d",
    "midrank_columns",
    "rank_columns",
    "restrict",
    "parse_structured",
    "render_structured",
    "render_text",
    "PoolDecision",
    "StabilityReport",
    "subset_stability",
    "load_csv",
    "reproduce_example",
    "run_analysis",
    "__version__",
]
