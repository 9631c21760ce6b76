"""Shared domain types, parameter validation, and tuple ranking.

Symbols are 0-based ``{0, ..., v-1}`` everywhere in memory; the 1-based
presentation exists only as a file-format option in :mod:`pcaforge.artifact_io`.
All value types here are immutable and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlphabetTooSmall,
    ColumnOutOfRange,
    EpsilonOutOfRange,
    MOutOfRange,
    Overflow,
    RankOutOfRange,
    StrengthTooSmall,
    SymbolOutOfRange,
    UnsortedColumnSet,
)

# v^t must stay below this for parameters to be accepted at all (64-bit safe).
WIDE_INT_MAX = 2**63 - 1


@dataclass(frozen=True)
class PcaParams:
    """Validated parameter bundle threaded through bounds and builders.

    t: strength, k: columns, v: alphabet size, m: required distinct tuples
    per column t-set, epsilon: allowed defective fraction of t-sets,
    seed: 64-bit RNG seed.
    """

    t: int
    k: int
    v: int
    m: int
    epsilon: float = 0.0
    seed: int = 0

    @property
    def vt(self) -> int:
        return self.v**self.t


def validate(params: PcaParams) -> PcaParams:
    """Return ``params`` unchanged if every invariant holds, else raise.

    Invariants: 2 <= t <= k, v >= 2, 1 <= m <= v^t, 0 <= epsilon <= 1,
    and v^t fits in a 64-bit integer.
    """
    t, k, v, m = params.t, params.k, params.v, params.m
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if k < t:
        raise StrengthTooSmall(f"strength t={t} exceeds column count k={k}")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    if v > WIDE_INT_MAX or t * math.log(v) > math.log(WIDE_INT_MAX):
        raise Overflow(f"v^t = {v}^{t} exceeds the 64-bit range")
    if not 1 <= m <= v**t:
        raise MOutOfRange(f"m={m} outside [1, v^t={v ** t}]")
    if not 0.0 <= params.epsilon <= 1.0:
        raise EpsilonOutOfRange(f"epsilon={params.epsilon} outside [0, 1]")
    return params


def _as_cells(cells: np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    arr = np.asarray(cells, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError(f"cells must be 2-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class Array:
    """An N x k symbol grid over ``{0, ..., v-1}``.

    The cell matrix is made read-only on construction; operations that
    change contents return new arrays.
    """

    cells: np.ndarray
    v: int

    def __init__(self, cells: np.ndarray | Sequence[Sequence[int]], v: int):
        if v < 2:
            raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
        arr = _as_cells(cells)
        if arr.size and (arr.min() < 0 or arr.max() >= v):
            bad = arr[(arr < 0) | (arr >= v)].flat[0]
            raise SymbolOutOfRange(f"symbol {int(bad)} outside [0, {v})")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)
        object.__setattr__(self, "v", v)

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Array):
            return NotImplemented
        return (
            self.v == other.v
            and self.cells.shape == other.cells.shape
            and bool(np.array_equal(self.cells, other.cells))
        )

    def __repr__(self) -> str:
        return f"Array(rows={self.rows}, cols={self.cols}, v={self.v})"

    def stack(self, other: "Array") -> "Array":
        """Vertical concatenation; both arrays must share cols and v."""
        if self.v != other.v or self.cols != other.cols:
            raise ValueError("stacked arrays must share column count and alphabet")
        return Array(np.vstack([self.cells, other.cells]), self.v)


@dataclass(frozen=True)
class BoundResult:
    """A real-valued existence bound and its minimal-integer row count.

    ``n_rows`` is the smallest integer satisfying the underlying expected-value
    inequality, honoring strict vs non-strict comparison at exact-integer
    boundaries (a naive ceiling is off by one there).  ``source`` is a stable
    formula label, e.g. ``"eq6"``.
    """

    real_bound: float
    n_rows: int
    source: str
    detail: dict = field(default_factory=dict, compare=False)


def rank_weights(t: int, v: int) -> np.ndarray:
    """Mixed-radix weights making coordinate 0 most significant."""
    return v ** np.arange(t - 1, -1, -1, dtype=np.int64)


def tuple_rank(x: Iterable[int], v: int) -> int:
    """Rank of a tuple over ``{0..v-1}`` in [0, v^t), coordinate 0 most significant."""
    r = 0
    for c in x:
        c = int(c)
        if not 0 <= c < v:
            raise SymbolOutOfRange(f"coordinate {c} outside [0, {v})")
        r = r * v + c
    return r


def tuple_unrank(r: int, t: int, v: int) -> tuple[int, ...]:
    """Inverse of :func:`tuple_rank`: the t-tuple with the given rank."""
    r = int(r)
    if not 0 <= r < v**t:
        raise RankOutOfRange(f"rank {r} outside [0, {v ** t})")
    out = []
    for _ in range(t):
        out.append(r % v)
        r //= v
    return tuple(reversed(out))


def project(a: Array, columns: Sequence[int]) -> Array:
    """Restrict ``a`` to the given strictly increasing column indices."""
    cols = [int(c) for c in columns]
    for c in cols:
        if not 0 <= c < a.cols:
            raise ColumnOutOfRange(f"column {c} outside [0, {a.cols})")
    if any(b <= a_ for a_, b in zip(cols, cols[1:])):
        raise UnsortedColumnSet(f"columns {cols} not strictly increasing")
    return Array(a.cells[:, cols], a.v)
