"""Constructive procedures: randomized builders and exact derandomization.

All randomness comes from numpy's PCG64 generator seeded with the 64-bit seed
in the parameter bundle, so a fixed seed reproduces the output array and the
iteration count bit for bit on any platform.  Every builder verifies its own
output with the coverage predicates before returning; hitting an iteration cap
raises instead of returning a partial result.

Builders:

* :func:`build_pca_moser_tardos` — start from a uniform random array at the
  local-lemma row count, then repeatedly rescan column t-sets in lexicographic
  order and, at the first t-set covering fewer than m tuples, redraw all N*t
  entries of those t columns.  (The classic resampling scheme redraws only the
  violating event's variables; redrawing whole columns is what this variant
  prescribes.)
* :func:`build_apca_randomized` — sample whole arrays at the halved-epsilon
  union-bound row count until at most ``floor(epsilon * C(k,t))`` t-sets are
  defective; sampling succeeds with probability >= 1/2, so the expected number
  of attempts is at most 2.
* :func:`build_apca_cyclic` / :func:`build_apca_frobenius` — sample a small
  base array until enough t-sets cover every (full) orbit, then develop it
  over the group; the affine variant appends the v constant rows to pick up
  the short orbit.  Base sizing uses the same halved-epsilon/restart scheme.
* :func:`build_concat` — stack a partial-coverage component on a
  cyclic-development component and verify both guarantees.
* :func:`build_apca_derandomized` — deterministic column-by-column choice
  minimizing an exactly computable upper bound on the expected number of
  missing (t-set, tuple) pairs; supports full coverage targets (m = v^t) only.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import bounds
from .coverage import (
    count_defects,
    count_orbit_defects,
    first_defect,
    is_apca,
    is_pca,
)
from .core import Array, BoundResult, PcaParams, validate
from .errors import (
    CapacityExceeded,
    EpsilonZero,
    IterationCap,
    KTooSmallForLLL,
    MNotFull,
    PcaForgeError,
)
from .galois import constant_rows, cyclic_action, develop, frobenius_action, orbits

DEFAULT_RESAMPLE_CAP = 1_000_000
DEFAULT_RESTART_CAP = 64
# v^N limit for exact derandomization (candidate columns enumerated outright).
DERANDOMIZE_CAPACITY = 2**20


@dataclass(frozen=True)
class BuildReport:
    """A verified array plus how it was produced."""

    array: Array
    iterations: int
    rng_seed: int
    bound_used: BoundResult
    elapsed: float
    verifier: str
    detail: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return self.array.rows


def _rng_for(params: PcaParams, rng: np.random.Generator | None) -> np.random.Generator:
    if rng is not None:
        return rng
    return np.random.Generator(np.random.PCG64(params.seed))


def _sample(rng: np.random.Generator, n: int, k: int, v: int) -> np.ndarray:
    return rng.integers(0, v, size=(n, k), dtype=np.int64)


def build_pca_moser_tardos(
    params: PcaParams,
    *,
    rng: np.random.Generator | None = None,
    max_resamples: int = DEFAULT_RESAMPLE_CAP,
) -> BuildReport:
    """Resampling builder for partial m-coverage at the local-lemma row count."""
    params = validate(params)
    t, k, v, m = params.t, params.k, params.v, params.m
    if k < 2 * t:
        raise KTooSmallForLLL(f"k={k} below 2t={2 * t}")
    start = time.perf_counter()
    bound = bounds.bound_pca_lll(t, k, v, m)
    rng = _rng_for(params, rng)
    cells = _sample(rng, bound.n_rows, k, v)
    resamples = 0
    while True:
        defect = first_defect(cells, v, t, m)
        if defect is None:
            break
        if resamples >= max_resamples:
            raise IterationCap(f"hit resample cap {max_resamples} at t-set {defect.tset}")
        cells[:, defect.tset] = _sample(rng, bound.n_rows, t, v)
        resamples += 1
    array = Array(cells, v)
    check = is_pca(array, t, m)
    if not check.ok:
        raise PcaForgeError(f"internal: unverified output at {check.witness}")
    return BuildReport(
        array=array,
        iterations=resamples,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"pca(t={t}, m={m})",
    )


def algorithm_rows_apca(t: int, v: int, m: int, epsilon: float) -> int:
    """Row count used by the restart builder: the union-bound inequality at
    epsilon/2, leaving probability >= 1/2 that one sample already works."""
    return bounds.bound_apca(t, v, m, epsilon / 2).n_rows


def build_apca_randomized(
    params: PcaParams,
    *,
    rng: np.random.Generator | None = None,
    max_restarts: int = DEFAULT_RESTART_CAP,
) -> BuildReport:
    """Sample-and-check builder for epsilon-almost partial m-coverage."""
    params = validate(params)
    t, k, v, m = params.t, params.k, params.v, params.m
    epsilon = params.epsilon
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    start = time.perf_counter()
    n_rows = algorithm_rows_apca(t, v, m, epsilon)
    bound = bounds.bound_apca(t, v, m, epsilon)
    allowed = math.floor(epsilon * math.comb(k, t))
    rng = _rng_for(params, rng)
    attempts = 0
    while True:
        if attempts >= max_restarts:
            raise IterationCap(f"hit restart cap {max_restarts}")
        attempts += 1
        cells = _sample(rng, n_rows, k, v)
        # early exit once the defect budget is exceeded
        if count_defects(cells, v, t, m, stop_above=allowed) <= allowed:
            break
    array = Array(cells, v)
    check = is_apca(array, t, m, epsilon)
    if not check.ok:
        raise PcaForgeError("internal: unverified output")
    return BuildReport(
        array=array,
        iterations=attempts,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"apca(t={t}, m={m}, epsilon={epsilon})",
        detail={"defective_tsets": len(check.defects), "allowed": allowed},
    )


def _min_base_rows(log_constant: float, log_ratio: float) -> int:
    _, n = bounds._min_int(log_constant, log_ratio, strict=False)
    return n


def build_apca_cyclic(
    params: PcaParams,
    *,
    rng: np.random.Generator | None = None,
    max_restarts: int = DEFAULT_RESTART_CAP,
) -> BuildReport:
    """Cyclic-development builder for epsilon-almost full coverage (m = v^t).

    Samples base arrays until all but ``floor(epsilon * C(k,t))`` t-sets cover
    every orbit, then develops over the cyclic group.  The base row count uses
    the halved-epsilon inequality so each sample succeeds with probability
    >= 1/2.
    """
    params = validate(params)
    t, k, v = params.t, params.k, params.v
    epsilon = params.epsilon
    if params.m != v**t:
        raise MNotFull(f"cyclic development targets m = v^t, got m={params.m}")
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    start = time.perf_counter()
    structure = orbits(t, v, cyclic_action(v))
    n_orbits = structure.n_orbits
    n_base = _min_base_rows(
        math.log(n_orbits) - math.log(epsilon / 2),
        math.log(n_orbits / (n_orbits - 1)),
    )
    bound = bounds.bound_apca_cyclic(t, v, epsilon)
    allowed = math.floor(epsilon * math.comb(k, t))
    rng = _rng_for(params, rng)
    attempts = 0
    while True:
        if attempts >= max_restarts:
            raise IterationCap(f"hit restart cap {max_restarts}")
        attempts += 1
        base = _sample(rng, n_base, k, v)
        bad = count_orbit_defects(base, v, t, structure, n_orbits, stop_above=allowed)
        if bad <= allowed:
            break
    array = develop(Array(base, v), cyclic_action(v))
    check = is_apca(array, t, v**t, epsilon)
    if not check.ok:
        raise PcaForgeError("internal: unverified output")
    return BuildReport(
        array=array,
        iterations=attempts,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"apca(t={t}, m={v ** t}, epsilon={epsilon})",
        detail={"base_rows": n_base, "defective_tsets": len(check.defects)},
    )


def build_apca_frobenius(
    params: PcaParams,
    *,
    rng: np.random.Generator | None = None,
    max_restarts: int = DEFAULT_RESTART_CAP,
) -> BuildReport:
    """Affine-group builder for epsilon-almost full coverage (m = v^t).

    The accept test looks at full orbits only; the appended constant rows
    cover the short orbit in every t-set unconditionally.
    """
    params = validate(params)
    t, k, v = params.t, params.k, params.v
    epsilon = params.epsilon
    if params.m != v**t:
        raise MNotFull(f"affine development targets m = v^t, got m={params.m}")
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    action = frobenius_action(v)  # raises NotPrimePower for composite non-powers
    start = time.perf_counter()
    structure = orbits(t, v, action)
    n_full = structure.n_orbits - 1
    vtm1 = v ** (t - 1)
    n_base = _min_base_rows(
        math.log(n_full) - math.log(epsilon / 2),
        math.log(vtm1 / (vtm1 - (v - 1))),
    )
    bound = bounds.bound_apca_frobenius(t, v, epsilon)
    allowed = math.floor(epsilon * math.comb(k, t))
    rng = _rng_for(params, rng)
    attempts = 0
    while True:
        if attempts >= max_restarts:
            raise IterationCap(f"hit restart cap {max_restarts}")
        attempts += 1
        base = _sample(rng, n_base, k, v)
        bad = count_orbit_defects(
            base,
            v,
            t,
            structure,
            n_full,
            exclude_orbit=structure.short_orbit_id,
            stop_above=allowed,
        )
        if bad <= allowed:
            break
    array = develop(Array(base, v), action).stack(constant_rows(k, v))
    check = is_apca(array, t, v**t, epsilon)
    if not check.ok:
        raise PcaForgeError("internal: unverified output")
    return BuildReport(
        array=array,
        iterations=attempts,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"apca(t={t}, m={v ** t}, epsilon={epsilon})",
        detail={"base_rows": n_base, "defective_tsets": len(check.defects)},
    )


def build_concat(
    params: PcaParams,
    *,
    max_resamples: int = DEFAULT_RESAMPLE_CAP,
    max_restarts: int = DEFAULT_RESTART_CAP,
) -> BuildReport:
    """Stack a partial m-coverage component on an almost-full-coverage one.

    The output satisfies both guarantees: every t-set covers at least m
    tuples, and all but an epsilon fraction of t-sets cover all v^t tuples.
    Child builders get independent seeds derived from the bundle seed.
    """
    params = validate(params)
    t, k, v, m = params.t, params.k, params.v, params.m
    epsilon = params.epsilon
    start = time.perf_counter()
    bound = bounds.bound_concat(t, k, v, m, epsilon)
    m1 = bound.detail["m1"]
    seq1, seq2 = np.random.SeedSequence(params.seed).spawn(2)
    part1 = build_pca_moser_tardos(
        PcaParams(t=t, k=k, v=v, m=m1, epsilon=0.0, seed=params.seed),
        rng=np.random.Generator(np.random.PCG64(seq1)),
        max_resamples=max_resamples,
    )
    part2 = build_apca_cyclic(
        PcaParams(t=t, k=k, v=v, m=v**t, epsilon=epsilon, seed=params.seed),
        rng=np.random.Generator(np.random.PCG64(seq2)),
        max_restarts=max_restarts,
    )
    array = part1.array.stack(part2.array)
    pca_check = is_pca(array, t, m)
    apca_check = is_apca(array, t, v**t, epsilon)
    if not (pca_check.ok and apca_check.ok):
        raise PcaForgeError("internal: unverified output")
    return BuildReport(
        array=array,
        iterations=part1.iterations + part2.iterations,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"pca(t={t}, m={m}) + apca(t={t}, m={v ** t}, epsilon={epsilon})",
        detail={
            "m1": m1,
            "component_rows": (part1.n_rows, part2.n_rows),
            "component_iterations": (part1.iterations, part2.iterations),
        },
    )


# -- derandomization -------------------------------------------------------------

def _pessimistic_estimator(cells: np.ndarray, n_fixed: int, t: int, v: int) -> float:
    """Expected missing (t-set, tuple) pairs when columns >= n_fixed are random.

    For a t-set with f fixed columns, the probability that tuple x is missing
    is ``(1 - v^(f-t))^c`` where c counts rows whose fixed projection matches
    x; summing over x gives ``v^(t-f) * sum_q beta^(count_q)``.  With all
    columns fixed this is exactly the number of missing pairs.
    """
    n, k = cells.shape
    total = 0.0
    for tset in combinations(range(k), t):
        fixed = [c for c in tset if c < n_fixed]
        f = len(fixed)
        if f == 0:
            total += v**t * (1.0 - v**-t) ** n
            continue
        beta = 1.0 - float(v) ** (f - t)
        ranks = np.zeros(n, dtype=np.int64)
        for c in fixed:
            ranks = ranks * v + cells[:, c]
        cnt = np.bincount(ranks, minlength=v**f)
        if beta == 0.0:
            # fully fixed t-set: count tuples with no matching row
            total += float(np.count_nonzero(cnt == 0))
        else:
            total += float(v) ** (t - f) * float((beta**cnt).sum())
    return total


def derandomize_columns(t: int, k: int, v: int, n_rows: int) -> tuple[np.ndarray, list[float]]:
    """Fix columns left to right, minimizing the missing-pair estimator.

    For each column all v^N candidate assignments are scored; the minimizer
    is kept, ties resolved to the lexicographically smallest column (row 0
    most significant).  Returns the cells and the estimator trace: the value
    before any column is fixed, then after each column.  The trace never
    increases, because the previous value is the average of the candidate
    scores and the minimum cannot exceed the average.
    """
    if v**n_rows > DERANDOMIZE_CAPACITY:
        raise CapacityExceeded(f"v^N = {v}^{n_rows} exceeds {DERANDOMIZE_CAPACITY}")
    n_candidates = v**n_rows
    place = v ** np.arange(n_rows - 1, -1, -1, dtype=np.int64)
    cells = np.zeros((n_rows, k), dtype=np.int64)
    trace = [_pessimistic_estimator(cells, 0, t, v)]
    chunk = max(1, min(n_candidates, (1 << 22) // max(v**t, 1)))
    for j in range(k):
        tsets = [ts for ts in combinations(range(k), t) if j in ts]
        prefix_ranks = []
        fsizes = []
        for ts in tsets:
            fixed = [c for c in ts if c < j]
            ranks = np.zeros(n_rows, dtype=np.int64)
            for c in fixed:
                ranks = ranks * v + cells[:, c]
            prefix_ranks.append(ranks)
            fsizes.append(len(fixed) + 1)
        best_score = math.inf
        best_idx = -1
        for lo in range(0, n_candidates, chunk):
            idx = np.arange(lo, min(lo + chunk, n_candidates), dtype=np.int64)
            cand = (idx[:, None] // place[None, :]) % v  # (B, N) candidate columns
            scores = np.zeros(len(idx))
            for ts, pref, f in zip(tsets, prefix_ranks, fsizes):
                full = pref[None, :] * v + cand  # rank over the f fixed coords
                vf = v**f
                flat = (np.arange(len(idx), dtype=np.int64)[:, None] * vf + full).ravel()
                cnt = np.bincount(flat, minlength=len(idx) * vf).reshape(len(idx), vf)
                beta = 1.0 - float(v) ** (f - t)
                if beta == 0.0:
                    scores += np.count_nonzero(cnt == 0, axis=1).astype(float)
                else:
                    scores += float(v) ** (t - f) * (beta**cnt).sum(axis=1)
            pos = int(np.argmin(scores))  # first minimum = lex smallest
            if scores[pos] < best_score:
                best_score = float(scores[pos])
                best_idx = int(idx[pos])
        cells[:, j] = (best_idx // place) % v
        trace.append(_pessimistic_estimator(cells, j + 1, t, v))
    return cells, trace


def build_apca_derandomized(params: PcaParams) -> BuildReport:
    """Deterministic builder for epsilon-almost full coverage (m = v^t only).

    Uses the union-bound row count, then fixes columns by exact conditional
    expectation of the missing-pair estimator.  The estimator decomposes per
    tuple only in the full-coverage case, which is why smaller m is rejected.
    """
    params = validate(params)
    t, k, v = params.t, params.k, params.v
    epsilon = params.epsilon
    if params.m != v**t:
        raise MNotFull(f"derandomization supports m = v^t only, got m={params.m}")
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    start = time.perf_counter()
    bound = bounds.bound_apca(t, v, v**t, epsilon)
    cells, trace = derandomize_columns(t, k, v, bound.n_rows)
    array = Array(cells, v)
    check = is_apca(array, t, v**t, epsilon)
    if not check.ok:
        raise PcaForgeError("internal: unverified output")
    return BuildReport(
        array=array,
        iterations=0,
        rng_seed=params.seed,
        bound_used=bound,
        elapsed=time.perf_counter() - start,
        verifier=f"apca(t={t}, m={v ** t}, epsilon={epsilon})",
        detail={"estimator_trace": trace, "defective_tsets": len(check.defects)},
    )
