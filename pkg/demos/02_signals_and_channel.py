#!/usr/bin/env python3
"""Input processes, measurement noise, and the benchmark channel.

Generates the two input kinds (white Gaussian, AR(1)), both noise kinds, and
composes the desired signal d(k) = true-channel response + noise.
"""

import numpy as np

from dsvolterra import (
    NoiseSpec,
    SignalSpec,
    benchmark_channel,
    desired_signal,
    generate_input,
    generate_noise,
)

wgn = generate_input(SignalSpec("white_gaussian", variance=1.0, seed=1), 100_000)
ar1 = generate_input(SignalSpec("ar1", variance=1.0, ar_coefficient=0.95, seed=1), 100_000)
print("inputs (100k samples):")
print(f"  white Gaussian: mean={wgn.mean():+.4f}  var={wgn.var():.4f}  (expect ~0, ~1)")
print(f"  AR(1), a=0.95:  mean={ar1.mean():+.4f}  var={ar1.var():.4f}  (expect ~0, ~10.26)")

gauss = generate_noise(NoiseSpec("gaussian", variance=0.01, seed=2), 100_000)
bounded = generate_noise(NoiseSpec("uniform_bounded", bound=0.1, seed=2), 100_000)
print("\nnoise (100k samples):")
print(f"  Gaussian:       var={gauss.var():.5f}  max|n|={np.abs(gauss).max():.3f}")
print(f"  uniform [-C,C]: var={bounded.var():.5f}  max|n|={np.abs(bounded).max():.3f}  (C=0.1 hard)")

channel = benchmark_channel()
print("\nbenchmark channel terms (order, lags -> weight):")
from dsvolterra import term_at

for i, value in enumerate(channel.kernel):
    if value != 0.0:
        term = term_at(i, channel.config)
        print(f"  order {term.order}, lags {term.lags}: {value:+.2f}")

x = np.array([1.0, 0.0, 1.0, 0.0, 1.0])
d = desired_signal(channel, x, np.zeros(5))
print(f"\nnoiseless response to input {x.tolist()}:")
print(f"  d = {np.round(d, 4).tolist()}")
print("  (d[2] = -0.76 + 0.5 + 2 = 1.74: the x(k)x(k-2) term fires)")
