#!/usr/bin/env python3
"""Monotone convergence when the noise bound is known.

If the noise satisfies |n(k)| <= C and the threshold is at least 2C, every
update strictly improves the estimate, so the deviation energy sequence never
increases.  With a smaller threshold on the same realization the guarantee is
lost and occasional increases appear.
"""

import dataclasses

from dsvolterra import ThresholdPolicy, harness

base = dataclasses.replace(harness.preset("fig5-blue"), trials=1, seeds=(3,))
result = harness.compare_algorithms(base)
verdict = result["trials"][0]["verdicts"]["ds_known_bound"]
print("uniform noise on [-0.1, 0.1], threshold gamma = 2C = 0.2:")
print(f"  updates: {verdict.update_count}, increases: {verdict.increase_count}")
print(f"  deviation energy: {verdict.wtilde_sq_initial:.4f} -> {verdict.wtilde_sq_final:.6f}")
print("  never a single increase: the estimate never degrades.\n")

loose = dataclasses.replace(
    base,
    algorithms=(
        dataclasses.replace(
            base.algorithms[0],
            label="ds_small_gamma",
            policy=ThresholdPolicy.fixed(0.05, sigma_n_sq=0.01),
        ),
    ),
)
result = harness.compare_algorithms(loose)
verdict = result["trials"][0]["verdicts"]["ds_small_gamma"]
print("same realization, threshold gamma = 0.05 < 2C:")
print(f"  updates: {verdict.update_count}, increases: {verdict.increase_count}")
print(f"  deviation energy: {verdict.wtilde_sq_initial:.4f} -> {verdict.wtilde_sq_final:.6f}")
print("  below 2C the monotonicity guarantee is gone (though the global")
print("  energy ratio still certifies l2-stability).")
