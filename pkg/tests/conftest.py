"""Shared fixtures and independent oracle helpers.

The oracle helpers work on plain nested tuples, not on Mat2, so trace
values asserted in tests come from a second arithmetic path.
"""

from __future__ import annotations

import pytest

from monodromy import Mat2, Representation, SamplerConfig, close_tuple, phi
from monodromy import sample_generic, sample_su2, sample_su11


# --- plain-tuple 2x2 oracle -------------------------------------------------

def omat(m: Mat2):
    return ((m.m11, m.m12), (m.m21, m.m22))


def omul(p, q):
    return (
        (p[0][0] * q[0][0] + p[0][1] * q[1][0], p[0][0] * q[0][1] + p[0][1] * q[1][1]),
        (p[1][0] * q[0][0] + p[1][1] * q[1][0], p[1][0] * q[0][1] + p[1][1] * q[1][1]),
    )


def otr(p):
    return p[0][0] + p[1][1]


def oword(rep: Representation, indices) -> complex:
    """Trace of M_{i1} M_{i2} ... (1-based indices, written left to right)."""
    prod = omat(rep.matrix(indices[0]))
    for idx in indices[1:]:
        prod = omul(prod, omat(rep.matrix(idx)))
    return otr(prod)


# --- canonical fixtures -------------------------------------------------------

@pytest.fixture
def fixture_mats():
    """The hand-checked n = 3 tuple with a = (0, 0, 3, -9/2), x = (-5/2, 0, 3/2)."""
    return (
        Mat2(0.0, 1.0, -1.0, 0.0),
        Mat2(0.0, 2.0, -0.5, 0.0),
        Mat2(2.0, 1.0, 1.0, 1.0),
    )


@pytest.fixture
def fixture_rep(fixture_mats):
    return close_tuple(fixture_mats)


@pytest.fixture
def fixture_coords(fixture_rep):
    return phi(fixture_rep)


def identity_rep(n: int) -> Representation:
    return close_tuple([Mat2(1.0, 0.0, 0.0, 1.0)] * n)


def generic(n: int, seed: int, **kw) -> Representation:
    return sample_generic(SamplerConfig(seed=seed, n=n, **kw))


def su2(n: int, seed: int, **kw) -> Representation:
    return sample_su2(SamplerConfig(seed=seed, n=n, **kw))


def su11(n: int, seed: int, **kw) -> Representation:
    return sample_su11(SamplerConfig(seed=seed, n=n, **kw))
