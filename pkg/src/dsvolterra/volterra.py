"""Triangular Volterra regressor layout: term indexing, expansion, prediction.

Once the input delay line is expanded into every monomial
``x(k-l1) * ... * x(k-lp)`` with nondecreasing lags, for orders ``p = 1..P``
and lags in ``0..N``, the model output is linear in the stacked kernel
vector.  Blocks are stacked by ascending order; within a block, lag tuples
are in lexicographic order.  The constant term is excluded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from .errors import DimensionMismatchError, InvalidTermError

ArrayF = npt.NDArray[np.float64]

# A term table beyond this would exhaust memory; refuse early instead of
# letting index arithmetic or an allocation fail somewhere deep.
_MAX_DIMENSION = 2_000_000


@dataclass(frozen=True)
class VolterraConfig:
    """Filter layout: polynomial order, memory (``memory + 1`` taps) and the
    NLMS energy regularization.

    ``regularization = 0`` is accepted so that exact hand traces can run
    unregularized; the update then guards against a zero-energy regressor at
    run time.
    """

    order: int
    memory: int
    regularization: float = 1e-9

    def __post_init__(self) -> None:
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"order must be an integer >= 1, got {self.order!r}")
        if not isinstance(self.memory, int) or self.memory < 0:
            raise ValueError(f"memory must be an integer >= 0, got {self.memory!r}")
        delta = float(self.regularization)
        if not math.isfinite(delta) or delta < 0.0:
            raise ValueError(
                f"regularization must be finite and >= 0, got {self.regularization!r}"
            )
        object.__setattr__(self, "regularization", delta)
        dim = sum(math.comb(self.memory + p, p) for p in range(1, self.order + 1))
        if dim > _MAX_DIMENSION:
            raise ValueError(
                f"(order={self.order}, memory={self.memory}) expands to {dim} terms,"
                f" beyond the supported maximum of {_MAX_DIMENSION}"
            )

    @property
    def taps(self) -> int:
        """Delay-line length (memory + 1)."""
        return self.memory + 1


@dataclass(frozen=True)
class TermIndex:
    """One kernel/regressor position: monomial order and nondecreasing lags."""

    order: int
    lags: tuple[int, ...]

    def __post_init__(self) -> None:
        lags = tuple(int(lag) for lag in self.lags)
        object.__setattr__(self, "lags", lags)
        if self.order < 1:
            raise InvalidTermError(f"term order must be >= 1, got {self.order}")
        if len(lags) != self.order:
            raise InvalidTermError(f"expected {self.order} lags, got {len(lags)}")
        if any(lag < 0 for lag in lags):
            raise InvalidTermError(f"lags must be nonnegative, got {lags}")
        if any(a > b for a, b in zip(lags, lags[1:])):
            raise InvalidTermError(f"lags must be nondecreasing, got {lags}")


@lru_cache(maxsize=None)
def _layout(order: int, memory: int):
    """Canonical term enumeration plus per-order lag matrices for expansion."""
    terms: list[TermIndex] = []
    blocks: list[np.ndarray] = []
    for p in range(1, order + 1):
        tuples = list(itertools.combinations_with_replacement(range(memory + 1), p))
        terms.extend(TermIndex(p, t) for t in tuples)
        blocks.append(np.asarray(tuples, dtype=np.intp).reshape(len(tuples), p))
    positions = {(t.order, t.lags): i for i, t in enumerate(terms)}
    return tuple(terms), positions, tuple(blocks)


def total_dimension(config: VolterraConfig) -> int:
    """Number of kernel terms: sum over p of C(memory + p, p), exact integers."""
    return sum(math.comb(config.memory + p, p) for p in range(1, config.order + 1))


def position_of(term: TermIndex, config: VolterraConfig) -> int:
    """Canonical flat index of a term; inverse of :func:`term_at`."""
    _, positions, _ = _layout(config.order, config.memory)
    key = (term.order, term.lags)
    if key not in positions:
        raise InvalidTermError(
            f"term (order={term.order}, lags={term.lags}) outside layout"
            f" (order <= {config.order}, lags <= {config.memory})"
        )
    return positions[key]


def term_at(position: int, config: VolterraConfig) -> TermIndex:
    """Term stored at a flat position; inverse of :func:`position_of`."""
    terms, _, _ = _layout(config.order, config.memory)
    if not 0 <= position < len(terms):
        raise InvalidTermError(f"position {position} outside 0..{len(terms) - 1}")
    return terms[position]


def expand(delay_line, config: VolterraConfig) -> ArrayF:
    """Expand a delay line ``[x(k), ..., x(k-N)]`` into the full regressor.

    The linear block is the delay line verbatim; every further entry is the
    product of the delay-line samples named by its term's lags.
    """
    dl = np.asarray(delay_line, dtype=np.float64)
    if dl.shape != (config.taps,):
        raise DimensionMismatchError(
            f"delay line must have length {config.taps}, got shape {dl.shape}"
        )
    _, _, blocks = _layout(config.order, config.memory)
    return np.concatenate([dl[b].prod(axis=1) for b in blocks])


def expand_series(signal, config: VolterraConfig) -> ArrayF:
    """Regressor matrix for a whole signal with a zero-primed delay line.

    Row ``k`` equals :func:`expand` of the delay line after the samples
    ``signal[0..k]`` have been pushed.
    """
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatchError("signal must be a 1-D vector")
    n = x.shape[0]
    padded = np.concatenate([np.zeros(config.memory), x])
    delays = np.column_stack(
        [padded[config.memory - i : config.memory - i + n] for i in range(config.taps)]
    )
    _, _, blocks = _layout(config.order, config.memory)
    return np.concatenate([delays[:, b].prod(axis=2) for b in blocks], axis=1)


def predict(kernel, regressor) -> float:
    """Inner product of a kernel vector with a regressor."""
    w = np.asarray(kernel, dtype=np.float64)
    x = np.asarray(regressor, dtype=np.float64)
    if w.ndim != 1 or w.shape != x.shape:
        raise DimensionMismatchError(
            f"kernel {w.shape} and regressor {x.shape} must be equal-length vectors"
        )
    return float(w @ x)


def embed_kernel(kernel, source: VolterraConfig, target: VolterraConfig) -> ArrayF:
    """Re-express a kernel in a larger layout; terms absent there stay zero."""
    w = np.asarray(kernel, dtype=np.float64)
    if w.shape != (total_dimension(source),):
        raise DimensionMismatchError(
            f"kernel shape {w.shape} does not match source dimension"
            f" {total_dimension(source)}"
        )
    if source.order > target.order or source.memory > target.memory:
        raise DimensionMismatchError(
            f"source layout (order={source.order}, memory={source.memory}) does not"
            f" fit in target (order={target.order}, memory={target.memory})"
        )
    out = np.zeros(total_dimension(target))
    source_terms, _, _ = _layout(source.order, source.memory)
    for i, term in enumerate(source_terms):
        out[position_of(term, target)] = w[i]
    return out
