"""Local trace data, closed matrix tuples, and their trace coordinates.

A point of the coordinate space stores one value per unordered index pair
and one per ascending index triple:

* ``pairs[(i, j)]`` with ``i < j`` holds the pair trace ``tr(M_j M_i)``;
* ``triples[(i, j, k)]`` with ``i < j < k`` holds the triple trace
  ``tr(M_k M_j M_i)`` (reading the subscript word right to left).

Every other ordering is derived on access rather than stored: pair traces
are symmetric, the three cyclic rotations of a triple word share its value,
and the opposite rotation class follows from the linear reordering identity

    tr(M_k M_j M_i) + tr(M_k M_i M_j)
        = a_k x_ji + a_j x_ki + a_i x_kj - a_k a_j a_i.

For n = 3 the triple map is empty: the single triple trace always equals
the closing trace a_4 and is read from the local data.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import BadIndex
from .sl2 import DEFAULT_TOL, IDENTITY, Mat2, Tolerance, check_unimodular, max_entry_diff


def _require_finite_scalar(v: complex, what: str) -> None:
    if not cmath.isfinite(v):
        raise ValueError(f"non-finite {what}: {v!r}")


@dataclass(frozen=True)
class LocalData:
    """Prescribed traces (a_1, ..., a_n, a_{n+1}) of a closed tuple of size n."""

    a: tuple[complex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        if len(self.a) < 4:
            raise ValueError("need at least four local traces (n >= 3)")
        for v in self.a:
            _require_finite_scalar(v, "local trace")

    @property
    def n(self) -> int:
        return len(self.a) - 1

    @property
    def strict(self) -> bool:
        """True when no local trace equals +/-2 (every class diagonalizable)."""
        return all(v != 2 and v != -2 for v in self.a)

    def trace(self, j: int) -> complex:
        """a_j for 1 <= j <= n+1."""
        if not 1 <= j <= len(self.a):
            raise BadIndex(f"local trace index {j} out of range 1..{len(self.a)}")
        return self.a[j - 1]


@dataclass(frozen=True)
class Representation:
    """A tuple (M_1, ..., M_n) together with the closing matrix M_{n+1}.

    The closing matrix is meant to satisfy M_{n+1} M_n ... M_1 = I; use
    ``close_tuple`` to construct one with that invariant checked.
    """

    mats: tuple[Mat2, ...]
    last: Mat2

    def __post_init__(self) -> None:
        object.__setattr__(self, "mats", tuple(self.mats))

    @property
    def n(self) -> int:
        return len(self.mats)

    def matrix(self, j: int) -> Mat2:
        """M_j for 1 <= j <= n+1 (j = n+1 gives the closing matrix)."""
        if 1 <= j <= self.n:
            return self.mats[j - 1]
        if j == self.n + 1:
            return self.last
        raise BadIndex(f"matrix index {j} out of range 1..{self.n + 1}")

    def local(self) -> LocalData:
        return LocalData(tuple(m.trace for m in self.mats) + (self.last.trace,))

    def conjugated(self, p: Mat2) -> Representation:
        """The tuple (P M_s P^-1) with P^-1 taken as the adjugate."""
        q = p.adjugate()
        return Representation(
            tuple(p @ m @ q for m in self.mats), p @ self.last @ q
        )


def descending_product(mats: tuple[Mat2, ...]) -> Mat2:
    """The product M_n M_{n-1} ... M_1."""
    prod = mats[0]
    for m in mats[1:]:
        prod = m @ prod
    return prod


def close_tuple(mats, tol: Tolerance = DEFAULT_TOL) -> Representation:
    """Close (M_1, ..., M_n) with M_{n+1} = (M_n ... M_1)^{-1}.

    Every input must be unimodular within tolerance.  The closing matrix is
    the adjugate of the descending product, so the closure residual is
    governed by the accumulated determinant error alone.
    """
    mats = tuple(mats)
    if len(mats) < 3:
        raise ValueError("need at least three matrices (n >= 3)")
    for m in mats:
        check_unimodular(m, tol)
    return Representation(mats, descending_product(mats).adjugate())


def closure_residual(rep: Representation) -> float:
    """Entrywise norm of M_{n+1} M_n ... M_1 - I."""
    return max_entry_diff(rep.last @ descending_product(rep.mats), IDENTITY)


@dataclass(frozen=True)
class TraceCoordinates:
    """A coordinate point together with the local data it refers to."""

    local: LocalData
    pairs: dict[tuple[int, int], complex]
    triples: dict[tuple[int, int, int], complex] = field(default_factory=dict)
    # Memo slot for derived values (e.g. relation residuals); write-once and
    # idempotent, so sharing across threads stays safe.
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", dict(self.pairs))
        object.__setattr__(self, "triples", dict(self.triples))
        n = self.local.n
        object.__setattr__(self, "_n", n)
        if set(self.pairs) != set(combinations(range(1, n + 1), 2)):
            raise ValueError(f"pair keys must be the {comb(n, 2)} ascending pairs in 1..{n}")
        want = set() if n == 3 else set(combinations(range(1, n + 1), 3))
        if set(self.triples) != want:
            raise ValueError(
                "triple keys must be "
                + ("empty for n = 3" if n == 3 else f"the {comb(n, 3)} ascending triples in 1..{n}")
            )
        for v in list(self.pairs.values()) + list(self.triples.values()):
            _require_finite_scalar(v, "coordinate")

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        """Dimension of the ambient coordinate space."""
        n = self.n
        return 3 if n == 3 else comb(n, 3) + comb(n, 2)

    def pair(self, j: int, i: int) -> complex:
        """Pair trace tr(M_j M_i) = tr(M_i M_j); symmetric lookup."""
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise BadIndex(f"bad pair index ({j}, {i}) for n = {self.n}")
        return self.pairs[(i, j) if i < j else (j, i)]

    def triple(self, k: int, j: int, i: int) -> complex:
        return triple_trace(self, k, j, i)

    def quad(self, k: int, j: int, i: int, i0: int) -> complex:
        return quad_trace(self, k, j, i, i0)

    def items(self):
        """Yield ((j, i), x_ji) then ((k, j, i), x_kji) in canonical order.

        Canonical order lists pairs sorted by (j, i) and triples sorted by
        (k, j, i), i.e. x_21, x_31, x_32, ..., x_321, x_421, ...
        """
        for i, j in sorted(self.pairs, key=lambda key: (key[1], key[0])):
            yield (j, i), self.pairs[(i, j)]
        for i, j, k in sorted(self.triples, key=lambda key: (key[2], key[1], key[0])):
            yield (k, j, i), self.triples[(i, j, k)]

    def vector(self) -> tuple[complex, ...]:
        """The coordinate values in canonical order."""
        return tuple(v for _, v in self.items())

    def max_abs(self) -> float:
        """Largest magnitude over local traces and stored coordinates."""
        return max(
            max(abs(v) for v in self.local.a),
            max(abs(v) for _, v in self.items()),
        )


def phi(rep: Representation) -> TraceCoordinates:
    """Trace coordinates of a tuple: x_ji = tr(M_j M_i), x_kji = tr(M_k M_j M_i).

    Conjugation-invariant up to roundoff, since traces are.
    """
    mats = rep.mats
    n = rep.n
    pairs = {
        (i, j): (mats[j - 1] @ mats[i - 1]).trace
        for i, j in combinations(range(1, n + 1), 2)
    }
    triples = {}
    if n >= 4:
        triples = {
            (i, j, k): (mats[k - 1] @ mats[j - 1] @ mats[i - 1]).trace
            for i, j, k in combinations(range(1, n + 1), 3)
        }
    return TraceCoordinates(rep.local(), pairs, triples)


def _check_distinct(x: TraceCoordinates, indices: tuple[int, ...]) -> None:
    if len(set(indices)) != len(indices):
        raise BadIndex(f"indices {indices} are not distinct")
    for v in indices:
        if not 1 <= v <= x.n:
            raise BadIndex(f"index {v} out of range 1..{x.n}")


def triple_trace(x: TraceCoordinates, k: int, j: int, i: int) -> complex:
    """tr(M_k M_j M_i) for any ordering of three distinct indices.

    Orderings in the cyclic class of the stored descending word return the
    stored value; the opposite class is computed from the reordering
    identity (see the module docstring).  For n = 3 the stored value is the
    closing trace a_4.
    """
    _check_distinct(x, (k, j, i))
    lo, mid, hi = sorted((k, j, i))
    if x.n == 3:
        stored = x.local.trace(4)
    else:
        stored = x.triples[(lo, mid, hi)]
    if (k, j, i) in ((hi, mid, lo), (mid, lo, hi), (lo, hi, mid)):
        return stored
    a = x.local.trace
    sym = (
        a(k) * x.pair(j, i) + a(j) * x.pair(k, i) + a(i) * x.pair(k, j)
        - a(k) * a(j) * a(i)
    )
    return sym - stored


def quad_trace(x: TraceCoordinates, k: int, j: int, i: int, i0: int) -> complex:
    """tr(M_k M_j M_i M_{i0}) for four distinct indices, reduced to stored data.

    Evaluates the four-factor trace identity on the pair and triple
    accessors; agrees with the directly computed trace whenever the
    coordinates come from an actual tuple.
    """
    _check_distinct(x, (k, j, i, i0))
    a = x.local.trace
    p = x.pair
    t = lambda c1, c2, c3: triple_trace(x, c1, c2, c3)
    return 0.5 * (
        a(k) * a(j) * a(i) * a(i0)
        + a(k) * t(j, i, i0) + a(j) * t(k, i, i0)
        + a(i) * t(k, j, i0) + a(i0) * t(k, j, i)
        + p(k, j) * p(i, i0) - p(k, i) * p(j, i0) + p(k, i0) * p(j, i)
        - a(k) * a(j) * p(i, i0) - a(k) * a(i0) * p(j, i)
        - a(j) * a(i) * p(k, i0) - a(i0) * a(i) * p(k, j)
    )


def coordinate_distance(xa: TraceCoordinates, xb: TraceCoordinates) -> float:
    """Largest per-coordinate difference |xa_c - xb_c| / (1 + |xa_c|).

    Both points must live on the same index layout.
    """
    if xa.n != xb.n:
        raise ValueError(f"coordinate layouts differ: n = {xa.n} vs {xb.n}")
    worst = 0.0
    for (key, va), (_, vb) in zip(xa.items(), xb.items()):
        worst = max(worst, abs(va - vb) / (1.0 + abs(va)))
    return worst
