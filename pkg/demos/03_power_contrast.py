"""
Power: what each test can actually detect
=========================================

Five synthetic algorithms with well separated means; the pair under watch
is (A, B) at a distance of 1.5 standard deviations. The sign test sees it
almost every time. The mean-ranks test, with C, D, E far ahead compressing
the pair's mean ranks together, almost never does.

10000 replicates keep this quick; the shipped reproduction uses 100000
(rankjudge reproduce 2).
"""

from rankjudge import (
    analytic_sign_power,
    estimate_power,
    replicate_values,
    separated_pool_scenario,
)

REPLICATES = 10_000

for test in ("sign-exact", "sign-normal-approx", "wilcoxon", "mean-ranks"):
    scn = separated_pool_scenario(test, replicates=REPLICATES)
    est = estimate_power(scn)
    print(f"{test:20s} power {est.estimate:.4f} +/- {est.std_error:.4f}")

# the sign test has a closed form under Gaussian scenarios: the win count
# is binomial with q = Phi(delta / sqrt(2)). No simulation needed.
scn = separated_pool_scenario("sign-exact", replicates=REPLICATES)
print(f"\nclosed-form sign power: {analytic_sign_power(scn):.4f}")

# every replicate is its own substream: replicate 4071 is the same matrix
# whether or not the other 9999 ever run
x = replicate_values(scn, 4071)
again = replicate_values(separated_pool_scenario("sign-exact", replicates=1), 4071)
print("replicate 4071 reproducible in isolation:", (x == again).all())
