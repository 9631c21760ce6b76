"""Exhaustive coverage verification.

The primary counter (:func:`coverage_profile`) walks column t-sets in
lexicographic order and counts distinct projected rows with a presence buffer
of length v^t, one t-set at a time, so memory stays O(v^t) regardless of k.
:func:`naive_oracle` recomputes the same profile by materializing projected
rows as Python tuples in a set — a deliberately different code path kept for
cross-validation and never used by the builders.

Predicates: an array has partial coverage m when every t-set covers at least
m distinct tuples; it has epsilon-almost coverage when all but
``floor(epsilon * C(k,t))`` t-sets do.  Witnesses are always the
lexicographically first defective t-set, so reports are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

import numpy as np

from .core import Array, rank_weights
from .errors import CapacityExceeded, EpsilonOutOfRange, StrengthTooSmall
from .galois import OrbitStructure

# Presence-buffer guard for the primary counter.
PROFILE_CAPACITY = 2**26
# Work guard for the brute-force oracle: C(k,t) * N * v^t.
ORACLE_CAPACITY = 10**8


class Defect(NamedTuple):
    """A column t-set covering fewer distinct tuples than required."""

    tset: tuple[int, ...]
    count: int


class PcaCheck(NamedTuple):
    ok: bool
    witness: Defect | None


class ApcaCheck(NamedTuple):
    ok: bool
    defects: list[Defect]
    allowed: int


@dataclass(frozen=True, eq=False)
class CoverageProfile:
    """Distinct-tuple counts for every column t-set, in lexicographic order."""

    t: int
    v: int
    k: int
    counts: np.ndarray

    @property
    def min_count(self) -> int:
        return int(self.counts.min()) if len(self.counts) else 0

    @property
    def tsets(self) -> Iterator[tuple[int, ...]]:
        return combinations(range(self.k), self.t)

    def defective(self, m: int) -> list[Defect]:
        """All t-sets covering fewer than m distinct tuples, in lex order."""
        return [
            Defect(tset, int(c))
            for tset, c in zip(self.tsets, self.counts)
            if c < m
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoverageProfile):
            return NotImplemented
        return (
            (self.t, self.v, self.k) == (other.t, other.v, other.k)
            and bool(np.array_equal(self.counts, other.counts))
        )


def _check_profile_args(a: Array, t: int) -> int:
    if t < 1 or t > a.cols:
        raise StrengthTooSmall(f"t={t} outside [1, k={a.cols}]")
    vt = a.v**t
    if vt > PROFILE_CAPACITY:
        raise CapacityExceeded(f"v^t = {vt} exceeds {PROFILE_CAPACITY}")
    return vt


def _distinct_counts(cells: np.ndarray, v: int, t: int) -> np.ndarray:
    """Distinct projected-row count per lex t-set, via a reused presence buffer."""
    k = cells.shape[1]
    weights = rank_weights(t, v)
    present = np.zeros(v**t, dtype=bool)
    counts = np.empty(math.comb(k, t), dtype=np.int64)
    for i, tset in enumerate(combinations(range(k), t)):
        ranks = cells[:, tset] @ weights
        present[ranks] = True
        counts[i] = np.count_nonzero(present)
        present[ranks] = False  # cheap reset: only touched positions
    return counts


def coverage_profile(a: Array, t: int) -> CoverageProfile:
    """Count the distinct tuples each column t-set covers."""
    _check_profile_args(a, t)
    return CoverageProfile(t=t, v=a.v, k=a.cols, counts=_distinct_counts(a.cells, a.v, t))


def naive_oracle(a: Array, t: int) -> CoverageProfile:
    """Same contract as :func:`coverage_profile`, different implementation.

    Projects each row to a Python tuple and counts set sizes.  Guarded to
    small instances; exists purely to cross-check the primary counter.
    """
    if t < 1 or t > a.cols:
        raise StrengthTooSmall(f"t={t} outside [1, k={a.cols}]")
    work = math.comb(a.cols, t) * max(a.rows, 1) * a.v**t
    if work > ORACLE_CAPACITY:
        raise CapacityExceeded(f"oracle work {work} exceeds {ORACLE_CAPACITY}")
    rows = [tuple(int(x) for x in row) for row in a.cells]
    counts = []
    for tset in combinations(range(a.cols), t):
        seen = set()
        for row in rows:
            seen.add(tuple(row[j] for j in tset))
        counts.append(len(seen))
    return CoverageProfile(t=t, v=a.v, k=a.cols, counts=np.array(counts, dtype=np.int64))


def first_defect(cells: np.ndarray, v: int, t: int, m: int) -> Defect | None:
    """Lexicographically first t-set covering < m distinct tuples, else None.

    Early-exit scan used by the resampling builder; same counting scheme as
    :func:`coverage_profile`.
    """
    weights = rank_weights(t, v)
    present = np.zeros(v**t, dtype=bool)
    for tset in combinations(range(cells.shape[1]), t):
        ranks = cells[:, tset] @ weights
        present[ranks] = True
        count = int(np.count_nonzero(present))
        present[ranks] = False
        if count < m:
            return Defect(tset, count)
    return None


def count_defects(
    cells: np.ndarray, v: int, t: int, m: int, *, stop_above: int | None = None
) -> int:
    """Number of t-sets covering < m tuples; stops early past ``stop_above``."""
    weights = rank_weights(t, v)
    present = np.zeros(v**t, dtype=bool)
    defects = 0
    for tset in combinations(range(cells.shape[1]), t):
        ranks = cells[:, tset] @ weights
        present[ranks] = True
        count = int(np.count_nonzero(present))
        present[ranks] = False
        if count < m:
            defects += 1
            if stop_above is not None and defects > stop_above:
                return defects
    return defects


def is_pca(a: Array, t: int, m: int) -> PcaCheck:
    """Does every column t-set cover at least m distinct tuples?

    On failure the witness is the lex-first defective t-set with its count.
    """
    defect = first_defect(a.cells, a.v, t, m)
    return PcaCheck(ok=defect is None, witness=defect)


def is_apca(a: Array, t: int, m: int, epsilon: float) -> ApcaCheck:
    """Do all but ``floor(epsilon * C(k,t))`` t-sets cover at least m tuples?

    The report lists every defective t-set in lexicographic order.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise EpsilonOutOfRange(f"epsilon={epsilon} outside [0, 1]")
    profile = coverage_profile(a, t)
    defects = profile.defective(m)
    allowed = math.floor(epsilon * math.comb(a.cols, t))
    return ApcaCheck(ok=len(defects) <= allowed, defects=defects, allowed=allowed)


def completeness(a: Array, q: float, t: int) -> float:
    """Fraction of t-sets covering at least ``q * v^t`` distinct tuples.

    The threshold is ``ceil(q * v^t)`` with an exact-integer product not
    rounded up (a count meeting the product exactly qualifies).
    """
    if not 0.0 <= q <= 1.0:
        raise EpsilonOutOfRange(f"q={q} outside [0, 1]")
    profile = coverage_profile(a, t)
    target = q * a.v**t
    threshold = math.ceil(target - 1e-9 * max(1.0, target))
    n_tsets = len(profile.counts)
    return float(np.count_nonzero(profile.counts >= threshold)) / n_tsets


def orbit_coverage(a: Array, t: int, structure: OrbitStructure) -> np.ndarray:
    """Covered-orbit count per t-set for an undeveloped base array.

    An orbit is covered in a t-set when at least one of its tuples appears in
    the projection.  Developing the base replaces each covered orbit by all
    its members, so the developed distinct-tuple count per t-set equals the
    sum of covered orbit lengths.
    """
    _check_profile_args(a, t)
    if structure.t != t or structure.v != a.v:
        raise ValueError("orbit structure does not match array parameters")
    weights = rank_weights(t, a.v)
    present = np.zeros(structure.n_orbits, dtype=bool)
    counts = np.empty(math.comb(a.cols, t), dtype=np.int64)
    for i, tset in enumerate(combinations(range(a.cols), t)):
        oids = structure.orbit_index[a.cells[:, tset] @ weights]
        present[oids] = True
        counts[i] = np.count_nonzero(present)
        present[oids] = False
    return counts


def count_orbit_defects(
    cells: np.ndarray,
    v: int,
    t: int,
    structure: OrbitStructure,
    required: int,
    *,
    exclude_orbit: int | None = None,
    stop_above: int | None = None,
) -> int:
    """t-sets whose projection covers fewer than ``required`` orbits.

    ``exclude_orbit`` drops one orbit id from the tally (used to ignore the
    short orbit, which constant rows cover unconditionally).  Early exit past
    ``stop_above`` mirrors the builders' accept/reject scan.
    """
    weights = rank_weights(t, v)
    present = np.zeros(structure.n_orbits, dtype=bool)
    defects = 0
    for tset in combinations(range(cells.shape[1]), t):
        oids = structure.orbit_index[cells[:, tset] @ weights]
        present[oids] = True
        covered = int(np.count_nonzero(present))
        if exclude_orbit is not None and present[exclude_orbit]:
            covered -= 1
        present[oids] = False
        if covered < required:
            defects += 1
            if stop_above is not None and defects > stop_above:
                return defects
    return defects
