"""Shared test oracles, independent of the library's code paths."""

from __future__ import annotations

import numpy as np
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def enumerate_terms_oracle(order: int, memory: int) -> list[tuple[int, tuple[int, ...]]]:
    """Brute-force enumeration of all nondecreasing lag tuples, lowest order
    first, lexicographic within an order block.  Written with explicit
    recursion so it shares nothing with the library's itertools-based path.
    """
    out: list[tuple[int, tuple[int, ...]]] = []
    for p in range(1, order + 1):

        def rec(prefix: list[int], start: int) -> None:
            if len(prefix) == p:
                out.append((p, tuple(prefix)))
                return
            for lag in range(start, memory + 1):
                rec(prefix + [lag], lag)

        rec([], 0)
    return out


def expand_oracle(delay_line, order: int, memory: int) -> np.ndarray:
    """Regressor by direct per-term multiplication over the oracle term list."""
    values = []
    for _, lags in enumerate_terms_oracle(order, memory):
        prod = 1.0
        for lag in lags:
            prod *= float(delay_line[lag])
        values.append(prod)
    return np.asarray(values)


def channel_polynomial_oracle(x, k: int) -> float:
    """Hand evaluation of the benchmark channel at index k, zero before start."""

    def at(i: int) -> float:
        return float(x[i]) if i >= 0 else 0.0

    return (
        -0.76 * at(k)
        + 0.5 * at(k) ** 2
        + 2.0 * at(k) * at(k - 2)
        - 0.5 * at(k - 3) ** 2
    )
