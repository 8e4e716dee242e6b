"""Complex 2x2 matrix algebra and the trace identities everything else consumes.

Scalars are double-precision complex numbers throughout; matrices are
immutable value objects.  Inverses always go through the adjugate, which is
the exact inverse of a determinant-1 matrix and therefore keeps
unimodularity residuals tight.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import NotUnimodular


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used by residual checks.

    ``bound(scale)`` gives the acceptance threshold ``abs + rel * |scale|``.
    """

    abs: float = 1e-9
    rel: float = 1e-9

    def __post_init__(self) -> None:
        if self.abs < 0 or self.rel < 0:
            raise ValueError("tolerances must be non-negative")
        if self.abs + self.rel == 0:
            raise ValueError("abs and rel tolerance cannot both be zero")

    def bound(self, scale: float = 1.0) -> float:
        return self.abs + self.rel * abs(scale)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 complex matrix [[m11, m12], [m21, m22]]."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    def __post_init__(self) -> None:
        for v in (self.m11, self.m12, self.m21, self.m22):
            if not cmath.isfinite(v):
                raise ValueError(f"non-finite matrix entry {v!r}")

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    @property
    def trace(self) -> complex:
        return self.m11 + self.m22

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def adjugate(self) -> Mat2:
        """[[m22, -m12], [-m21, m11]]; the inverse whenever det == 1."""
        return Mat2(self.m22, -self.m12, -self.m21, self.m11)

    def conj_transpose(self) -> Mat2:
        return Mat2(
            complex(self.m11).conjugate(),
            complex(self.m21).conjugate(),
            complex(self.m12).conjugate(),
            complex(self.m22).conjugate(),
        )

    def scaled(self, factor: complex) -> Mat2:
        return Mat2(factor * self.m11, factor * self.m12,
                    factor * self.m21, factor * self.m22)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.m11, self.m12, self.m21, self.m22)

    def max_abs(self) -> float:
        return max(abs(v) for v in self.entries())


IDENTITY = Mat2(1.0, 0.0, 0.0, 1.0)


def mul(a: Mat2, b: Mat2) -> Mat2:
    """Matrix product a @ b."""
    return a @ b


def max_entry_diff(a: Mat2, b: Mat2) -> float:
    """Largest entrywise |a - b|."""
    return max(abs(x - y) for x, y in zip(a.entries(), b.entries()))


def check_unimodular(a: Mat2, tol: Tolerance = DEFAULT_TOL) -> None:
    """Raise NotUnimodular unless |det(a) - 1| is within tolerance."""
    err = abs(a.det - 1.0)
    if err > tol.bound():
        raise NotUnimodular(f"|det - 1| = {err:.3e} exceeds tolerance {tol.bound():.3e}")


def det_trace_inverse(a: Mat2, tol: Tolerance = DEFAULT_TOL) -> tuple[complex, complex, Mat2]:
    """Return (det, trace, inverse) with the inverse taken as the adjugate.

    Raises NotUnimodular if |det - 1| exceeds tolerance, since the adjugate
    is only the true inverse of a determinant-1 matrix.
    """
    d = a.det
    if abs(d - 1.0) > tol.bound():
        raise NotUnimodular(f"|det - 1| = {abs(d - 1.0):.3e} exceeds tolerance")
    return d, a.trace, a.adjugate()


def skein_check(a: Mat2, b: Mat2, tol: Tolerance = DEFAULT_TOL) -> float:
    """Residual |tr(AB) + tr(AB^-1) - tr(A) tr(B)| for unimodular A, B.

    The combination vanishes identically on determinant-1 matrices; callers
    assert the returned residual against their tolerance.
    """
    check_unimodular(a, tol)
    check_unimodular(b, tol)
    lhs = (a @ b).trace + (a @ b.adjugate()).trace
    return abs(lhs - a.trace * b.trace)


def four_trace_reduction(
    t_a: complex, t_b: complex, t_c: complex, t_d: complex,
    t_ab: complex, t_ac: complex, t_ad: complex,
    t_bc: complex, t_bd: complex, t_cd: complex,
    t_abc: complex, t_abd: complex, t_acd: complex, t_bcd: complex,
) -> complex:
    """tr(ABCD) expressed through the 14 traces of shorter products.

    Takes the four single traces, the six pair-product traces and the four
    triple-product traces of determinant-1 matrices A, B, C, D and returns
    the value the four-factor trace must have.
    """
    return 0.5 * (
        t_a * t_b * t_c * t_d
        + t_a * t_bcd + t_b * t_acd + t_c * t_abd + t_d * t_abc
        + t_ab * t_cd - t_ac * t_bd + t_ad * t_bc
        - t_a * t_b * t_cd - t_a * t_d * t_bc
        - t_b * t_c * t_ad - t_d * t_c * t_ab
    )


def eigenvalues(a: Mat2) -> tuple[complex, complex]:
    """Closed-form eigenvalues (tr +/- sqrt(tr^2 - 4 det)) / 2."""
    t, d = a.trace, a.det
    s = cmath.sqrt(t * t - 4.0 * d)
    return (t + s) / 2.0, (t - s) / 2.0


def eigenvectors(a: Mat2) -> list[tuple[complex, complex]]:
    """Unit eigenvectors of a 2x2 matrix, one per eigenvalue.

    For a (near-)scalar matrix both rows of a - lambda*I vanish and the
    standard basis vector is returned instead.
    """
    vecs = []
    for lam in eigenvalues(a):
        v1 = (a.m12, lam - a.m11)
        v2 = (lam - a.m22, a.m21)
        v = max(v1, v2, key=lambda w: abs(w[0]) + abs(w[1]))
        norm = (abs(v[0]) ** 2 + abs(v[1]) ** 2) ** 0.5
        if norm == 0.0:
            v = (1.0, 0.0)
        else:
            v = (v[0] / norm, v[1] / norm)
        vecs.append(v)
    return vecs
