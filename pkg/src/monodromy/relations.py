"""Defining polynomial relations of the coordinate image and their residuals.

The image of the trace-coordinate map is cut out by three families of
polynomials:

* type 1: one per unordered pair of ascending index triples (repetition
  allowed), ``s3(t1) s3(t2) + 2 det Z`` over a 3x3 block of ``z`` entries;
* type 2 (n >= 4): one per (index, ascending quadruple), an alternating
  ``z``-weighted sum of ``s3`` values;
* type 3 (n >= 4): the full descending word trace, expanded recursively
  into stored data, minus the closing trace a_{n+1}.

For n = 3 the single type 1 polynomial is the classical cubic relation and
is the whole story.  Enumeration order is fixed: type 1 over lexicographic
unordered pairs of triples, type 2 over lexicographic (i, quadruple),
type 3 last.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .coords import TraceCoordinates, triple_trace
from .errors import BadIndex, NotApplicable


def psi(s: complex, t: complex, u: complex) -> complex:
    """s^2 + t^2 + u^2 - s t u - 4.

    At (tr(AB), tr(A), tr(B)) this equals tr(A B A^-1 B^-1) - 2, so it
    vanishes exactly when the pair generates a reducible group.
    """
    return s * s + t * t + u * u - s * t * u - 4.0


def _check_ascending(x: TraceCoordinates, indices: tuple[int, ...]) -> None:
    if list(indices) != sorted(set(indices)):
        raise BadIndex(f"indices {indices} must be strictly ascending")
    if indices[0] < 1 or indices[-1] > x.n:
        raise BadIndex(f"indices {indices} out of range 1..{x.n}")


def s3(x: TraceCoordinates, i1: int, i2: int, i3: int) -> complex:
    """a_i1 x_{i3 i2} + a_i2 x_{i3 i1} + a_i3 x_{i2 i1} - a_i3 a_i2 a_i1 - 2 x_{i3 i2 i1}."""
    _check_ascending(x, (i1, i2, i3))
    a = x.local.trace
    return (
        a(i1) * x.pair(i3, i2) + a(i2) * x.pair(i3, i1) + a(i3) * x.pair(i2, i1)
        - a(i3) * a(i2) * a(i1)
        - 2.0 * triple_trace(x, i3, i2, i1)
    )


def z_entry(x: TraceCoordinates, i: int, j: int) -> complex:
    """a_i^2/2 - 2 on the diagonal, x_ij - a_i a_j / 2 off it."""
    if not (1 <= i <= x.n and 1 <= j <= x.n):
        raise BadIndex(f"z entry ({i}, {j}) out of range 1..{x.n}")
    a = x.local.trace
    if i == j:
        return 0.5 * a(i) * a(i) - 2.0
    return x.pair(i, j) - 0.5 * a(i) * a(j)


def _det3(m: list[list[complex]]) -> complex:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def type1(x: TraceCoordinates, triple_a, triple_b) -> complex:
    """s3(t1) s3(t2) + 2 det Z with Z[p][q] = z(t1[p], t2[q]).

    Symmetric in the two triples; they are canonicalized internally, so the
    swapped call returns the identical value.
    """
    ta, tb = sorted((tuple(triple_a), tuple(triple_b)))
    _check_ascending(x, ta)
    _check_ascending(x, tb)
    z = [[z_entry(x, p, q) for q in tb] for p in ta]
    return s3(x, *ta) * s3(x, *tb) + 2.0 * _det3(z)


def type2(x: TraceCoordinates, i: int, quad) -> complex:
    """Alternating sum of z(i, p_k) s3(quadruple minus p_k) over the quadruple."""
    if x.n == 3:
        raise NotApplicable("type 2 relations need n >= 4")
    quad = tuple(quad)
    if len(quad) != 4:
        raise BadIndex(f"need an index quadruple, got {quad}")
    _check_ascending(x, quad)
    if not 1 <= i <= x.n:
        raise BadIndex(f"index {i} out of range 1..{x.n}")
    total = 0.0
    for pos in range(4):
        rest = quad[:pos] + quad[pos + 1:]
        term = z_entry(x, i, quad[pos]) * s3(x, *rest)
        total = total - term if pos % 2 else total + term
    return total


def g_poly(x: TraceCoordinates, indices) -> complex:
    """Trace of the descending product M_{i_k} ... M_{i_1} in terms of stored data.

    ``indices`` must be strictly descending.  A single index gives the local
    trace, two give the pair trace, three the triple trace; longer words are
    reduced through the four-factor trace identity applied to the lowest
    three indices, memoized over sub-words.
    """
    idx = tuple(indices)
    if not idx:
        raise BadIndex("empty index word")
    if list(idx) != sorted(set(idx), reverse=True):
        raise BadIndex(f"indices {idx} must be strictly descending")
    if idx[-1] < 1 or idx[0] > x.n:
        raise BadIndex(f"indices {idx} out of range 1..{x.n}")
    return _g(x, idx, {})


def _g(x: TraceCoordinates, idx: tuple[int, ...], memo: dict) -> complex:
    if idx in memo:
        return memo[idx]
    length = len(idx)
    if length == 1:
        v = x.local.trace(idx[0])
    elif length == 2:
        v = x.pair(idx[0], idx[1])
    elif length == 3:
        v = triple_trace(x, idx[0], idx[1], idx[2])
    else:
        head = idx[:-3]
        i3, i2, i1 = idx[-3], idx[-2], idx[-1]
        a = x.local.trace
        p = x.pair

        def g(word: tuple[int, ...]) -> complex:
            return _g(x, word, memo)

        v = 0.5 * (
            g(head) * a(i3) * a(i2) * a(i1)
            + g(head) * triple_trace(x, i3, i2, i1)
            + a(i1) * g(head + (i3, i2))
            + a(i2) * g(head + (i3, i1))
            + a(i3) * g(head + (i2, i1))
            + g(head + (i3,)) * p(i2, i1)
            - g(head + (i2,)) * p(i3, i1)
            + g(head + (i1,)) * p(i3, i2)
            - g(head) * a(i3) * p(i2, i1)
            - g(head) * a(i1) * p(i3, i2)
            - g(head + (i1,)) * a(i3) * a(i2)
            - g(head + (i3,)) * a(i2) * a(i1)
        )
    memo[idx] = v
    return v


def type3(x: TraceCoordinates) -> complex:
    """Full descending word trace minus the closing trace a_{n+1}."""
    if x.n == 3:
        raise NotApplicable("for n = 3 the single type 1 relation covers closure")
    return g_poly(x, tuple(range(x.n, 0, -1))) - x.local.trace(x.n + 1)


def relation_count(n: int) -> int:
    """Total number of defining relations: 1 for n = 3, else
    T(T+1)/2 + n C(n,4) + 1 with T = C(n,3)."""
    if n < 3:
        raise ValueError("need n >= 3")
    if n == 3:
        return 1
    t = comb(n, 3)
    return (t * t + t) // 2 + n * comb(n, 4) + 1


def type1_pairs(n: int):
    """Unordered pairs of ascending triples (repetition allowed), lexicographic."""
    triples = list(combinations(range(1, n + 1), 3))
    for pos, ta in enumerate(triples):
        for tb in triples[pos:]:
            yield ta, tb


def type2_terms(n: int):
    """(index, ascending quadruple) in lexicographic order; empty for n = 3."""
    for i in range(1, n + 1):
        for quad in combinations(range(1, n + 1), 4):
            yield i, quad


@dataclass(frozen=True)
class RelationResiduals:
    """Magnitudes of every defining relation at a point, grouped by type.

    ``max`` is the raw maximum; ``normalized`` divides it by ``scale``,
    the cube of (1 + largest input magnitude), matching the dominant degree
    of the relations.
    """

    type1: tuple[float, ...]
    type2: tuple[float, ...]
    type3: float | None
    max: float
    scale: float
    normalized: float

    @property
    def count(self) -> int:
        return len(self.type1) + len(self.type2) + (0 if self.type3 is None else 1)


def membership(x: TraceCoordinates) -> RelationResiduals:
    """Evaluate every defining relation at x.

    Reports residual magnitudes only and never fails on large values;
    deciding what counts as "on the variety" is the caller's job.  The
    result is memoized on the (immutable) coordinate point.
    """
    cached = x._cache.get("membership")
    if cached is not None:
        return cached
    n = x.n
    r1 = tuple(abs(type1(x, ta, tb)) for ta, tb in type1_pairs(n))
    if n == 3:
        r2: tuple[float, ...] = ()
        r3 = None
    else:
        r2 = tuple(abs(type2(x, i, quad)) for i, quad in type2_terms(n))
        r3 = abs(type3(x))
    worst = max(max(r1), max(r2, default=0.0), r3 or 0.0)
    scale = (1.0 + x.max_abs()) ** 3
    result = RelationResiduals(r1, r2, r3, worst, scale, worst / scale)
    x._cache["membership"] = result
    return result
