#!/usr/bin/env python3
"""Tour of the triangular Volterra layout.

Shows how a nonlinear finite-memory model becomes linear in its stacked
kernel vector: term enumeration, flat positions, expansion of a delay line,
and the per-order homogeneity of the expansion.
"""

import numpy as np

from dsvolterra import (
    TermIndex,
    VolterraConfig,
    expand,
    position_of,
    term_at,
    total_dimension,
)

config = VolterraConfig(order=3, memory=3)
dim = total_dimension(config)
print(f"order={config.order}, memory={config.memory} (taps={config.taps})")
print(f"kernel dimension: {dim}  (4 linear + 10 quadratic + 20 cubic)\n")

print("first entries of the canonical layout:")
for position in range(8):
    term = term_at(position, config)
    print(f"  position {position:2d} -> order {term.order}, lags {term.lags}")
print("  ...")

term = TermIndex(2, (0, 2))
print(f"\nposition_of(order=2, lags=(0, 2)) = {position_of(term, config)}")

delay = np.array([2.0, 3.0])
small = VolterraConfig(order=2, memory=1)
print(f"\nexpand({delay.tolist()}) under (order=2, memory=1):")
print(f"  {expand(delay, small).tolist()}")
print("  = [x, x1, x^2, x*x1, x1^2]")

rng = np.random.default_rng(0)
dl = rng.normal(size=config.taps)
s = 2.0
orders = np.array([term_at(i, config).order for i in range(dim)])
ratio = expand(s * dl, config) / expand(dl, config)
print(f"\nscaling the delay line by s={s} scales each order-p block by s^p:")
for p in (1, 2, 3):
    block = ratio[orders == p]
    print(f"  order {p}: ratios all {block[0]:.1f} (spread {np.ptp(block):.2e})")
