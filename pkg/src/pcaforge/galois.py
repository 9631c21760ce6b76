"""Finite fields of order <= 64 and symbol group actions.

Two actions on ``{0, ..., v-1}`` matter here: the cyclic shifts
``x -> x + c (mod v)`` (defined by integer arithmetic, so they exist for every
v >= 2) and, for prime-power v, the affine maps ``x -> a*x + b`` with a != 0
over the field of order v, which act sharply 2-transitively.  Acting
coordinatewise on t-tuples partitions ``[v]^t`` into orbits:

* cyclic: ``v^(t-1)`` orbits, all of length v;
* affine: ``(v^(t-1)-1)/(v-1)`` full orbits of length ``v(v-1)`` plus the one
  short orbit of length v made of the constant tuples.

Field tables come from one fixed irreducible polynomial per (p, n), so element
labels are deterministic across runs.  Which polynomial is chosen changes row
labels of developed arrays but no coverage statistic (the orbit partitions are
isomorphic either way).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Array, rank_weights
from .errors import AlphabetTooSmall, CapacityExceeded, NotPrimePower, OrderTooLarge

# Enumeration guard for orbit computation: v^t * |G| table entries.
ORBIT_CAPACITY = 2**24

# Irreducible polynomials over GF(p), ascending coefficients, monic.
# One entry per proper prime power up to 64.
_IRREDUCIBLE = {
    (2, 2): (1, 1, 1),            # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),         # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),      # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),   # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    (3, 2): (1, 0, 1),            # x^2 + 1
    (3, 3): (1, 2, 0, 1),         # x^3 + 2x + 1
    (5, 2): (2, 0, 1),            # x^2 + 2
    (7, 2): (1, 0, 1),            # x^2 + 1
}


def _factor_prime_power(v: int) -> tuple[int, int] | None:
    """(p, n) with v = p^n, or None if v is not a prime power."""
    if v < 2:
        return None
    for p in range(2, v + 1):
        if p * p > v:
            return (v, 1)
        if v % p == 0:
            n = 0
            reduced = v
            while reduced % p == 0:
                reduced //= p
                n += 1
            return (p, n) if reduced == 1 else None
    return None


def is_prime_power(v: int, *, required: bool = False) -> bool:
    """Whether v = p^n; with ``required=True`` raise NotPrimePower instead."""
    ok = _factor_prime_power(v) is not None
    if required and not ok:
        raise NotPrimePower(f"v={v} is not a prime power")
    return ok


@dataclass(frozen=True, eq=False)
class Field:
    """Arithmetic tables for the field of order v = p^n.

    Elements are integers 0..v-1 encoding coefficient vectors in base p
    (digit i is the coefficient of x^i).  ``add`` and ``mul`` are v x v
    lookup tables.
    """

    v: int
    p: int
    n: int
    poly: tuple[int, ...]
    add: np.ndarray
    mul: np.ndarray


def _digits(e: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(e % p)
        e //= p
    return out


def _undigits(d: list[int], p: int) -> int:
    e = 0
    for c in reversed(d):
        e = e * p + c
    return e


def field_make(v: int) -> Field:
    """Build the field of order v from its fixed irreducible polynomial."""
    pn = _factor_prime_power(v)
    if pn is None:
        raise NotPrimePower(f"v={v} is not a prime power")
    p, n = pn
    if v > 64:
        raise OrderTooLarge(f"field order {v} above the supported maximum 64")
    if n == 1:
        poly: tuple[int, ...] = (0, 1)  # placeholder; arithmetic is plain mod p
        xy = np.arange(v, dtype=np.int64)
        add = (xy[:, None] + xy[None, :]) % v
        mul = (xy[:, None] * xy[None, :]) % v
        return Field(v=v, p=p, n=n, poly=poly, add=add, mul=mul)
    poly = _IRREDUCIBLE[(p, n)]
    add = np.zeros((v, v), dtype=np.int64)
    mul = np.zeros((v, v), dtype=np.int64)
    digit_cache = [_digits(e, p, n) for e in range(v)]
    for a in range(v):
        da = digit_cache[a]
        for b in range(v):
            db = digit_cache[b]
            add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
            # polynomial product reduced modulo the irreducible polynomial
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] = (prod[i + j] + x * y) % p
            for deg in range(2 * n - 2, n - 1, -1):
                c = prod[deg]
                if c:
                    prod[deg] = 0
                    for j in range(n):
                        prod[deg - n + j] = (prod[deg - n + j] - c * poly[j]) % p
            mul[a, b] = _undigits(prod[:n], p)
    add.setflags(write=False)
    mul.setflags(write=False)
    return Field(v=v, p=p, n=n, poly=poly, add=add, mul=mul)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """A finite group acting on symbols, stored as one permutation per element.

    ``perms[g, x]`` is the image of symbol x under element g.  Element 0 is
    the identity; element order is fixed so developed row order is
    reproducible byte for byte.
    """

    kind: str  # "cyclic" | "frobenius"
    v: int
    perms: np.ndarray

    @property
    def order(self) -> int:
        return self.perms.shape[0]


def cyclic_action(v: int) -> GroupAction:
    """The v shifts ``x -> x + c (mod v)``, c = 0..v-1."""
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    x = np.arange(v, dtype=np.int64)
    perms = (x[None, :] + np.arange(v, dtype=np.int64)[:, None]) % v
    perms.setflags(write=False)
    return GroupAction(kind="cyclic", v=v, perms=perms)


def frobenius_action(v: int) -> GroupAction:
    """The v(v-1) affine maps ``x -> a*x + b``, a != 0, over the order-v field.

    Elements are listed a = 1..v-1 outer, b = 0..v-1 inner, so (a=1, b=0) is
    the identity and comes first.
    """
    field = field_make(v)
    perms = np.zeros((v * (v - 1), v), dtype=np.int64)
    i = 0
    for a in range(1, v):
        ax = field.mul[a]
        for b in range(v):
            perms[i] = field.add[ax, b]
            i += 1
    perms.setflags(write=False)
    return GroupAction(kind="frobenius", v=v, perms=perms)


def act(action: GroupAction, element: int, x: tuple[int, ...]) -> tuple[int, ...]:
    """Apply one group element coordinatewise to a tuple of symbols."""
    perm = action.perms[element]
    return tuple(int(perm[c]) for c in x)


@dataclass(frozen=True, eq=False)
class OrbitStructure:
    """The partition of ``[v]^t`` under a coordinatewise group action.

    ``orbit_index[r]`` is the orbit id of the tuple with rank r;
    ``representatives[o]`` is the minimum rank in orbit o; ``lengths[o]`` its
    size.  For the affine action ``short_orbit_id`` names the constant-tuple
    orbit; full orbits are all the others.
    """

    t: int
    v: int
    kind: str
    orbit_index: np.ndarray
    representatives: np.ndarray
    lengths: np.ndarray
    short_orbit_id: int | None

    @property
    def n_orbits(self) -> int:
        return len(self.lengths)


def orbits(t: int, v: int, action: GroupAction) -> OrbitStructure:
    """Enumerate all orbits of ``[v]^t``, representatives in increasing rank."""
    if action.v != v:
        raise ValueError(f"action is over v={action.v}, asked for v={v}")
    vt = v**t
    g = action.order
    if vt * g > ORBIT_CAPACITY:
        raise CapacityExceeded(f"v^t * |G| = {vt * g} exceeds {ORBIT_CAPACITY}")
    weights = rank_weights(t, v)
    # digits[r] = the tuple with rank r, coordinate 0 most significant
    digits = (np.arange(vt, dtype=np.int64)[:, None] // weights[None, :]) % v
    # images[e, r] = rank of element e applied to tuple r; filled one element
    # at a time to keep the peak intermediate at (v^t, t) instead of g times that
    images = np.empty((g, vt), dtype=np.int64)
    for e in range(g):
        images[e] = action.perms[e][digits] @ weights
    orbit_index = np.full(vt, -1, dtype=np.int64)
    representatives: list[int] = []
    lengths: list[int] = []
    for r in range(vt):
        if orbit_index[r] >= 0:
            continue
        members = np.unique(images[:, r])
        oid = len(representatives)
        orbit_index[members] = oid
        representatives.append(r)
        lengths.append(len(members))
    short_id: int | None = None
    if action.kind == "frobenius":
        short_id = int(orbit_index[0])  # orbit of the all-zero (constant) tuple
    orbit_index.setflags(write=False)
    return OrbitStructure(
        t=t,
        v=v,
        kind=action.kind,
        orbit_index=orbit_index,
        representatives=np.array(representatives, dtype=np.int64),
        lengths=np.array(lengths, dtype=np.int64),
        short_orbit_id=short_id,
    )


def develop(a: Array, action: GroupAction) -> Array:
    """Replace each row by its images under every group element.

    Output has ``rows * |G|`` rows ordered input row first, then element order,
    so results are byte-identical for a given input.
    """
    if action.v != a.v:
        raise ValueError(f"action is over v={action.v}, array over v={a.v}")
    stacked = action.perms[:, a.cells]          # (g, N, k)
    out = stacked.transpose(1, 0, 2).reshape(-1, a.cols)
    return Array(out, a.v)


def constant_rows(k: int, v: int) -> Array:
    """The v rows (i, i, ..., i); they cover the constant tuple of every t-set."""
    if v < 2:
        raise AlphabetTooSmall(f"alphabet size v={v} must be at least 2")
    cells = np.repeat(np.arange(v, dtype=np.int64), k).reshape(v, k)
    return Array(cells, v)
