"""Existence bounds for partial and almost-partial covering arrays.

Everything is evaluated in log space with double precision: the binomial
terms involved (e.g. C(4096, 2048)) overflow any machine integer, so no
integer binomial is ever formed.  Each bound returns a
:class:`~pcaforge.core.BoundResult` whose ``n_rows`` is the minimal integer
satisfying the bound's underlying expected-value inequality.  Where that
inequality is strict ("expected count below 1") the minimal integer enforces
strictness; where it is non-strict, equality at an exact-integer boundary is
accepted.  A naive ceiling gets both of those boundary cases wrong.

Formula labels used throughout (also the CSV vocabulary):

========== ==============================================================
label      bound
========== ==============================================================
eq5        union bound over missing tuple sets (partial coverage)
eq6        local-lemma bound, needs k >= 2t (partial coverage)
eq7        asymptotic rewrite of eq6 (informational, real-valued only)
eq8        cyclic-development bound for partial coverage
apca       union bound allowing a defective fraction epsilon of t-sets
cyclic     cyclic-orbit bound for almost-full coverage (m = v^t)
frobenius  affine-group-orbit bound, prime-power v only (m = v^t)
concat     eq6 component stacked with a cyclic component (dual guarantee)
can-upper  classical full-coverage upper reference, (t-1) v^t log2 k
can-lower  classical full-coverage lower reference, v^(t-1) log2 k
========== ==============================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import BoundResult
from .errors import (
    AlphabetTooSmall,
    DomainError,
    EmptyRange,
    EpsilonOutOfRange,
    EpsilonZero,
    KTooSmallForLLL,
    MConditionViolated,
    MNotFull,
    MOutOfRange,
    RNonPositive,
    ROutOfRange,
    SOutOfRange,
    StrengthTooSmall,
)
from .galois import is_prime_power

# Relative slack used to recognize an exact-integer boundary in a real bound.
_BOUNDARY_RTOL = 1e-9


def log_binomial(n: int, r: int) -> float:
    """ln C(n, r) via log-gamma; accurate to well over 12 significant digits."""
    if r < 0 or r > n:
        raise ROutOfRange(f"r={r} outside [0, n={n}]")
    return math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)


def _min_int(log_constant: float, log_ratio: float, *, strict: bool) -> tuple[float, int]:
    """Minimal integer N with ``N * log_ratio {>, >=} log_constant``.

    Returns ``(real_bound, n)`` where ``real_bound = log_constant / log_ratio``.
    When the real bound sits on an integer (to relative tolerance), a strict
    inequality pushes one step past it and a non-strict one accepts it.
    """
    if log_ratio <= 0:
        raise DomainError("nonpositive log ratio")
    rb = log_constant / log_ratio
    nearest = round(rb)
    if abs(rb - nearest) <= _BOUNDARY_RTOL * max(1.0, abs(rb)):
        n = nearest + 1 if strict else nearest
    else:
        n = math.ceil(rb)
    return rb, n


def _check_common(t: int, k: int, v: int) -> None:
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if k < t:
        raise StrengthTooSmall(f"strength t={t} exceeds column count k={k}")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")


def _check_m(m: int, vt: int) -> None:
    if not 1 <= m <= vt:
        raise MOutOfRange(f"m={m} outside [1, v^t={vt}]")


def _check_epsilon(epsilon: float) -> None:
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    if epsilon > 1:
        raise EpsilonOutOfRange(f"epsilon={epsilon} outside (0, 1]")


def _degenerate(source: str) -> BoundResult:
    # m = 1: any single row covers one tuple in every t-set.
    return BoundResult(real_bound=0.0, n_rows=1, source=source)


def bound_pca_union(t: int, k: int, v: int, m: int) -> BoundResult:
    """Union bound: rows needed so every t-set covers >= m distinct tuples.

    Minimal N with ``C(k,t) C(v^t, m-1) ((m-1)/v^t)^N < 1`` (strict).
    """
    _check_common(t, k, v)
    vt = v**t
    _check_m(m, vt)
    if m == 1:
        return _degenerate("eq5")
    const = log_binomial(k, t) + log_binomial(vt, m - 1)
    ratio = math.log(vt / (m - 1))
    rb, n = _min_int(const, ratio, strict=True)
    return BoundResult(real_bound=rb, n_rows=n, source="eq5")


def bound_pca_lll(t: int, k: int, v: int, m: int) -> BoundResult:
    """Local-lemma bound, valid for k >= 2t; tighter than the union bound.

    Minimal N with ``e t C(k,t-1) C(v^t, m-1) ((m-1)/v^t)^N <= 1`` (non-strict).
    """
    _check_common(t, k, v)
    if k < 2 * t:
        raise KTooSmallForLLL(f"k={k} below 2t={2 * t}")
    vt = v**t
    _check_m(m, vt)
    if m == 1:
        return _degenerate("eq6")
    const = 1.0 + math.log(t) + log_binomial(k, t - 1) + log_binomial(vt, m - 1)
    ratio = math.log(vt / (m - 1))
    rb, n = _min_int(const, ratio, strict=False)
    return BoundResult(real_bound=rb, n_rows=n, source="eq6")


def bound_pca_asymptotic(t: int, k: float, v: int, m: int) -> float:
    """Asymptotic form of the local-lemma bound; informational, no row count.

    Returns ``(v^t (t-1) ln k / r) (1 - ln r / ln k)`` with r = v^t - m + 1.
    ``k`` may be real here (the formula is a smooth function of ln k).
    """
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    vt = v**t
    _check_m(m, vt)
    r = vt - m + 1
    if k <= 1 or math.log(k) <= 0:
        raise DomainError(f"ln k must be positive, got k={k}")
    if k <= r:
        raise DomainError(f"k={k} must exceed r={r}")
    lnk = math.log(k)
    return (vt * (t - 1) * lnk / r) * (1.0 - math.log(r) / lnk)


def bound_apca(t: int, v: int, m: int, epsilon: float) -> BoundResult:
    """Rows needed so all but an epsilon fraction of t-sets cover >= m tuples.

    Minimal N with ``C(v^t, m-1) ((m-1)/v^t)^N <= epsilon``; independent of k.
    """
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    vt = v**t
    _check_m(m, vt)
    _check_epsilon(epsilon)
    if m == 1:
        return _degenerate("apca")
    const = log_binomial(vt, m - 1) - math.log(epsilon)
    ratio = math.log(vt / (m - 1))
    rb, n = _min_int(const, ratio, strict=False)
    return BoundResult(real_bound=rb, n_rows=n, source="apca")


def bound_apca_cyclic(t: int, v: int, epsilon: float) -> BoundResult:
    """Almost-full coverage (m = v^t) via development over the order-v cyclic group.

    ``real_bound`` is the closed form ``v^t ln(v^(t-1)/epsilon)``;
    ``n_rows = v * n`` with n the minimal integer satisfying the exact
    union-bound inequality ``v^(t-1) (1 - 1/v^(t-1))^n <= epsilon``, which is
    tighter than the closed form.  Base-row count n is in ``detail``.
    """
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    _check_epsilon(epsilon)
    orbits = v ** (t - 1)
    const = math.log(orbits) - math.log(epsilon)
    ratio = math.log(orbits / (orbits - 1))
    _, n = _min_int(const, ratio, strict=False)
    closed_form = v**t * math.log(orbits / epsilon)
    return BoundResult(
        real_bound=closed_form,
        n_rows=v * n,
        source="cyclic",
        detail={"base_rows": n},
    )


def bound_apca_frobenius(t: int, v: int, epsilon: float) -> BoundResult:
    """Almost-full coverage (m = v^t) via development over the affine group.

    Needs prime-power v.  ``real_bound`` is the closed form
    ``v^t ln(2 v^(t-2)/epsilon) + v``; ``n_rows = v(v-1) n + v`` with n minimal
    for the exact full-orbit inequality
    ``((v^(t-1)-1)/(v-1)) (1 - (v-1)/v^(t-1))^n <= epsilon``.
    """
    if t < 2:
        raise StrengthTooSmall(f"strength t={t} must be at least 2")
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    is_prime_power(v, required=True)
    _check_epsilon(epsilon)
    orbits = v ** (t - 1)
    full_orbits = (orbits - 1) // (v - 1)
    const = math.log(full_orbits) - math.log(epsilon)
    ratio = math.log(orbits / (orbits - (v - 1)))
    _, n = _min_int(const, ratio, strict=False)
    closed_form = v**t * math.log(2 * v ** (t - 2) / epsilon) + v
    return BoundResult(
        real_bound=closed_form,
        n_rows=v * (v - 1) * n + v,
        source="frobenius",
        detail={"base_rows": n},
    )


def bound_pca_cyclic(
    t: int, k: int, v: int, m: int, *, include_t_factor: bool = False
) -> BoundResult:
    """Partial coverage via cyclic development: miss at most s-1 orbits per t-set.

    ``s = ceil((v^t - m + 1)/v)`` must satisfy ``1 <= s < v^(t-1)``.  The
    default evaluates the bound as displayed,
    ``v (1 + ln{C(k,t-1) C(v^(t-1), s)}) / ln(v^(t-1)/(v^(t-1)-s))``;
    ``include_t_factor=True`` multiplies the log argument by t, matching the
    intermediate base-row inequality (both variants are exposed because the
    two published forms differ).  ``n_rows = v * n`` with n from the non-strict
    minimal-integer rule on the chosen form.
    """
    _check_common(t, k, v)
    vt = v**t
    _check_m(m, vt)
    source = "eq8-t" if include_t_factor else "eq8"
    if m == 1:
        return _degenerate(source)
    r = vt - m + 1
    s = -(-r // v)
    orbits = v ** (t - 1)
    if not 1 <= s < orbits:
        raise SOutOfRange(f"s={s} outside [1, v^(t-1)={orbits})")
    const = 1.0 + log_binomial(k, t - 1) + log_binomial(orbits, s)
    if include_t_factor:
        const += math.log(t)
    ratio = math.log(orbits / (orbits - s))
    rb, n = _min_int(const, ratio, strict=False)
    return BoundResult(
        real_bound=v * rb,
        n_rows=v * n,
        source=source,
        detail={"s": s, "base_rows": n},
    )


def concat_split(t: int, k: int, v: int, m: int, epsilon: float) -> tuple[int, int]:
    """(r, m1) for the concatenated construction: deficiency r and the partial
    coverage target ``m1 = v^t - r + 1`` of the first component.

    Checks the admissibility condition ``m <= v^t + 1 - ln k / ln(v/eps^(1/(t-1)))``.
    """
    _check_common(t, k, v)
    vt = v**t
    _check_m(m, vt)
    if epsilon <= 0:
        raise EpsilonZero("epsilon must be positive")
    denom = math.log(v) - math.log(epsilon) / (t - 1)
    if denom <= 0:
        raise RNonPositive(
            f"ln(v/epsilon^(1/(t-1))) = {denom:.6g} <= 0 at v={v}, epsilon={epsilon}"
        )
    r_real = math.log(k) / denom
    if m > vt + 1 - r_real:
        raise MConditionViolated(
            f"m={m} exceeds v^t + 1 - ln k/ln(v/eps^(1/(t-1))) = {vt + 1 - r_real:.6g}"
        )
    r = max(1, math.floor(r_real))
    return r, vt - r + 1


def bound_concat(t: int, k: int, v: int, m: int, epsilon: float) -> BoundResult:
    """Row budget for the stacked construction meeting both guarantees.

    Component 1 is the local-lemma bound at ``m1 = v^t - r + 1``; component 2
    is the cyclic development sized with the same halved-epsilon inequality its
    constructive routine uses, so ``n_rows`` upper-bounds the rows the builder
    actually emits.
    """
    r, m1 = concat_split(t, k, v, m, epsilon)
    comp1 = bound_pca_lll(t, k, v, m1)
    comp2 = bound_apca_cyclic(t, v, epsilon / 2)
    return BoundResult(
        real_bound=comp1.real_bound + comp2.real_bound,
        n_rows=comp1.n_rows + comp2.n_rows,
        source="concat",
        detail={"r": r, "m1": m1, "component_rows": (comp1.n_rows, comp2.n_rows)},
    )


def bound_can_reference(t: int, k: int, v: int) -> tuple[float, float]:
    """Classical full-coverage reference lines ``((t-1) v^t log2 k, v^(t-1) log2 k)``.

    Informational context for sweep tables; leading constants of the suppressed
    lower-order terms are not modeled.
    """
    _check_common(t, k, v)
    return ((t - 1) * v**t * math.log2(k), v ** (t - 1) * math.log2(k))


# -- sweeps ---------------------------------------------------------------------

#: Formula labels accepted by :func:`sweep` and the CLI, with friendly aliases.
FORMULA_ALIASES: Mapping[str, str] = {
    "eq5": "eq5",
    "union": "eq5",
    "eq6": "eq6",
    "lll": "eq6",
    "eq7": "eq7",
    "asymptotic": "eq7",
    "eq8": "eq8",
    "cyclic-pca": "eq8",
    "eq8-t": "eq8-t",
    "apca": "apca",
    "cyclic": "cyclic",
    "frobenius": "frobenius",
    "concat": "concat",
    "can-upper": "can-upper",
    "can-lower": "can-lower",
}

#: Formulas that produce a real value but no minimal row count.
INFORMATIONAL = frozenset({"eq7", "can-upper", "can-lower"})


def evaluate_formula(
    formula: str, *, t: int, k: int, v: int, m: int, epsilon: float = 0.0
) -> BoundResult:
    """Evaluate one labeled formula at a parameter point."""
    name = FORMULA_ALIASES.get(formula)
    if name is None:
        raise DomainError(f"unknown formula {formula!r}")
    if name == "eq5":
        return bound_pca_union(t, k, v, m)
    if name == "eq6":
        return bound_pca_lll(t, k, v, m)
    if name == "eq7":
        val = bound_pca_asymptotic(t, k, v, m)
        return BoundResult(real_bound=val, n_rows=0, source="eq7")
    if name == "eq8":
        return bound_pca_cyclic(t, k, v, m)
    if name == "eq8-t":
        return bound_pca_cyclic(t, k, v, m, include_t_factor=True)
    if name == "apca":
        return bound_apca(t, v, m, epsilon)
    if name in ("cyclic", "frobenius"):
        if m != v**t:
            raise MNotFull(f"{name} development bound targets m = v^t, got m={m}")
        if name == "cyclic":
            return bound_apca_cyclic(t, v, epsilon)
        return bound_apca_frobenius(t, v, epsilon)
    if name == "concat":
        return bound_concat(t, k, v, m, epsilon)
    upper, lower = bound_can_reference(t, k, v)
    val = upper if name == "can-upper" else lower
    return BoundResult(real_bound=val, n_rows=0, source=name)


@dataclass(frozen=True)
class SweepPoint:
    """One axis value with a result (or a gap marker) per formula."""

    value: int
    results: dict[str, BoundResult | None]
    gap_reasons: dict[str, str]


@dataclass(frozen=True)
class BoundSweep:
    """Bound values tabulated along one varying parameter."""

    axis: str
    formulas: tuple[str, ...]
    points: tuple[SweepPoint, ...]


def sweep(
    formulas: Sequence[str],
    axis: str,
    values: Sequence[int],
    *,
    t: int,
    k: int = 0,
    v: int,
    m: int = 0,
    epsilon: float = 0.0,
) -> BoundSweep:
    """Evaluate each formula at each axis value; infeasible points become
    explicit gap markers rather than silent omissions.

    ``axis`` is ``"m"`` or ``"k"``; the fixed parameters supply the rest.
    """
    if axis not in ("m", "k"):
        raise DomainError(f"axis must be 'm' or 'k', got {axis!r}")
    values = list(values)
    if not values:
        raise EmptyRange("sweep range is empty")
    canon = []
    for f in formulas:
        name = FORMULA_ALIASES.get(f)
        if name is None:
            raise DomainError(f"unknown formula {f!r}")
        canon.append(name)
    points = []
    for value in sorted(set(values)):
        point_k = value if axis == "k" else k
        point_m = value if axis == "m" else m
        results: dict[str, BoundResult | None] = {}
        gaps: dict[str, str] = {}
        for name in canon:
            try:
                results[name] = evaluate_formula(
                    name, t=t, k=point_k, v=v, m=point_m, epsilon=epsilon
                )
            except Exception as exc:  # gap marker, never silent omission
                results[name] = None
                gaps[name] = f"{type(exc).__name__}: {exc}"
        points.append(SweepPoint(value=value, results=results, gap_reasons=gaps))
    return BoundSweep(axis=axis, formulas=tuple(canon), points=tuple(points))
