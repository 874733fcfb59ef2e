"""
The mean-ranks verdict depends on who else is in the pool
=========================================================

A and B tie 10-10 on the benchmark, dataset by dataset: the sign test says
p = 1.0, as flat a result as they come. The mean-ranks test still declares
them different once C, D, E join the comparison, because those three drag
the two mean ranks apart asymmetrically. Shrink the pool and the verdict
evaporates.
"""

from rankjudge import (
    CorrectionPolicy,
    five_algorithm_benchmark,
    pairwise_outcome,
    restrict,
    sign_test,
    subset_stability,
)

perf = five_algorithm_benchmark()
pair = ("A", "B")

s = sign_test(perf, pair)
print(f"sign test: A wins {s.detail['wins_a']}, B wins {s.detail['wins_b']},"
      f" p = {s.p_value}")

policy = CorrectionPolicy(kind="bonferroni", alpha=0.05)

full = pairwise_outcome(perf, pair, "mean-ranks", policy)
print(f"\nmean-ranks in the pool of 5: |diff| = {full.statistic}"
      f" vs threshold {full.detail['critical_value']:.4f}"
      f" -> {'REJECT' if full.reject else 'no difference'}")

alone = pairwise_outcome(restrict(perf, pair), pair, "mean-ranks", policy)
print(f"mean-ranks with the pair alone: |diff| = {alone.statistic}"
      f" vs threshold {alone.detail['critical_value']:.4f}"
      f" -> {'REJECT' if alone.reject else 'no difference'}")

# sweep every pool size in between
print("\npools containing (A, B), by cardinality:")
for k in (2, 3, 4, 5):
    rep = subset_stability(perf, pair, k)
    print(f"  k={k}: significant in {rep.pools_significant}"
          f" of {rep.pools_evaluated} pools")

# the flip runs the other way too: (D, E) is significant among few
# algorithms and loses it as the pool grows, with the statistic frozen at
# 1.0 the whole time
print("\nsame sweep for (D, E):")
for k in (2, 3, 4, 5):
    rep = subset_stability(perf, ("D", "E"), k)
    print(f"  k={k}: significant in {rep.pools_significant}"
          f" of {rep.pools_evaluated} pools")

# CLI equivalent:
#   rankjudge stability results.csv --pair A,B --cardinality 3
