"""
Ranking a benchmark table and screening it for any difference
=============================================================

Five algorithms, twenty datasets. The first question is never "which pair
differs" but "is there anything here at all"; that is the Friedman screen.
"""

from rankjudge import five_algorithm_benchmark, friedman, rank_columns

perf = five_algorithm_benchmark()
print(f"{perf.m} algorithms x {perf.n} datasets")

# columns are datasets; within each one the algorithms get midranks,
# larger score = larger rank
ranks = rank_columns(perf)
for name in perf.algorithm_names:
    print(f"  {name}: mean rank {ranks.mean_rank(name):.2f}")

out = friedman(perf)
print(f"\nFriedman S = {out.statistic:g} on {out.detail['dof']} dof")
print(f"p = {out.p_value:.3e}")
print("verdict:", "some algorithms differ" if out.reject else "nothing shown")

# the same thing from a CSV file would be:
#   rankjudge friedman results.csv
# and for machines:
#   rankjudge friedman results.csv --format structured
