"""
Family-wise error and the company you keep
==========================================

Two null experiments, Bonferroni everywhere. First: five identical
algorithms; any rejection is a false alarm. Second: four identical
algorithms plus one far-ahead outlier; only rejections among the four
equals count as errors. A test that treats pairs on their own keeps its
guarantee in both worlds. The mean-ranks test's error rate moves when the
outlier walks in, which is exactly what a guarantee is not allowed to do.

5000 replicates for speed (the shipped check runs 100000:
rankjudge reproduce 4_4).
"""

from rankjudge import all_equal_scenario, estimate_fwer, outlier_pool_scenario

REPLICATES = 5_000

sign_null = estimate_fwer(all_equal_scenario("sign-exact", replicates=REPLICATES))
print(f"sign-exact, all equal:      FWER {sign_null.estimate:.4f}"
      f" +/- {sign_null.std_error:.4f}   (alpha = 0.05)")

ranks_null = estimate_fwer(all_equal_scenario("mean-ranks", replicates=REPLICATES))
ranks_out = estimate_fwer(outlier_pool_scenario("mean-ranks", replicates=REPLICATES))
print(f"mean-ranks, all equal:      FWER {ranks_null.estimate:.4f}"
      f" +/- {ranks_null.std_error:.4f}")
print(f"mean-ranks, outlier pool:   FWER {ranks_out.estimate:.4f}"
      f" +/- {ranks_out.std_error:.4f}")
print("\nsame test, same four equal algorithms, different fifth wheel:"
      f" {ranks_null.estimate:.4f} vs {ranks_out.estimate:.4f}")
