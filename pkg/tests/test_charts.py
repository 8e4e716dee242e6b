from itertools import combinations

import pytest

from monodromy import (
    BadChart,
    ChartId,
    LocalData,
    TraceCoordinates,
    chart_poly,
    chart_psi,
    charts_for,
    classify_charts,
    index_set,
    phi,
    psi,
)
from monodromy.samplers import SplitMix64, random_unimodular

from conftest import generic, identity_rep, omat, omul, otr, oword


def test_index_set_n3():
    assert index_set(3) == [(1, 2), (2, 3), (3, 1)]


def test_index_set_n4():
    assert index_set(4) == [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 1)]


@pytest.mark.parametrize("n", range(3, 9))
def test_index_set_sizes_and_shape(n):
    pairs = index_set(n)
    # branch counts: j = 1 gives n-2 pairs, middle j give (n-1)(n-2)/2, j = n gives 1
    assert len(pairs) == (n - 2) + (n - 1) * (n - 2) // 2 + 1
    assert len(set(pairs)) == len(pairs)
    for j, k in pairs:
        assert j != k
        if j == 1:
            assert 2 <= k < n
        elif j == n:
            assert k == 1
        else:
            assert j < k <= n


def test_charts_for_counts():
    for n in (3, 4, 5, 6):
        charts = charts_for(n)
        assert len(charts) == len(index_set(n)) * (n - 1)
        assert charts == sorted(charts)  # lexicographic (j, k, i0)


def test_chart_id_validation():
    with pytest.raises(BadChart):
        ChartId(1, 1, 0)
    with pytest.raises(BadChart):
        ChartId(1, 2, 2)
    with pytest.raises(BadChart):
        ChartId(1, 2, -1)
    assert ChartId(1, 2, 0).label() == "(1,2,base)"
    assert ChartId(3, 1, 2).label() == "(3,1,2)"


def test_chart_poly_fixture(fixture_coords):
    value = chart_poly(fixture_coords, ChartId(1, 2, 0))
    assert abs(value - 81.0 / 16.0) <= 1e-14


def test_chart_poly_vanishes_at_pair_trace_two():
    pairs = {key: 2.0 for key in combinations(range(1, 4), 2)}
    x = TraceCoordinates(LocalData((0.5, 0.5, 0.5, 0.5)), pairs)
    assert chart_poly(x, ChartId(1, 2, 0)) == 0.0


def test_chart_poly_wraparound_pair_canonicalization():
    # chart (n, 1): the polynomial reads pair and triple traces with the
    # indices in non-ascending order; compare against direct matrix traces.
    rep = generic(4, seed=17)
    x = phi(rep)
    for i0 in (2, 3):
        got = chart_poly(x, ChartId(4, 1, i0))
        x14 = oword(rep, (1, 4))
        trip = oword(rep, (1, 4, i0))
        expect = (x14 * x14 - 4.0) * psi(trip, x14, rep.matrix(i0).trace)
        assert abs(got - expect) <= 1e-9 * (1.0 + abs(expect))


def test_chart_poly_anchored_between_canonicalization():
    # anchor strictly between j and k exercises the reordering identity
    rep = generic(4, seed=18)
    x = phi(rep)
    got = chart_poly(x, ChartId(2, 4, 3))
    x42 = oword(rep, (4, 2))
    trip = oword(rep, (4, 2, 3))
    expect = (x42 * x42 - 4.0) * psi(trip, x42, rep.matrix(3).trace)
    assert abs(got - expect) <= 1e-9 * (1.0 + abs(expect))


def test_chart_poly_full_sweep_against_oracle():
    # every chart at an n = 5 point: accessor-based value vs direct traces
    rep = generic(5, seed=19)
    x = phi(rep)
    for chart in charts_for(5):
        xkj = oword(rep, (chart.k, chart.j))
        if chart.i0 == 0:
            expect = (xkj * xkj - 4.0) * psi(
                xkj, oword(rep, (chart.k,)), oword(rep, (chart.j,))
            )
        else:
            trip = oword(rep, (chart.k, chart.j, chart.i0))
            expect = (xkj * xkj - 4.0) * psi(trip, xkj, oword(rep, (chart.i0,)))
        got = chart_poly(x, chart)
        assert abs(got - expect) <= 1e-9 * (1.0 + abs(expect))


def test_chart_poly_rejects_bad_chart():
    x = phi(generic(4, seed=2))
    with pytest.raises(BadChart):
        chart_poly(x, ChartId(2, 1, 0))  # (2, 1) is not a chart pair
    with pytest.raises(BadChart):
        chart_poly(x, ChartId(1, 4, 0))  # j = 1 requires k < n
    with pytest.raises(BadChart):
        chart_poly(x, ChartId(1, 2, 5))  # anchor beyond n


def test_classify_charts_fixture(fixture_coords):
    report = classify_charts(fixture_coords)
    assert ChartId(1, 2, 0) in report.admissible()
    assert report.best is not None


def test_classify_charts_all_pair_traces_two():
    pairs = {key: 2.0 for key in combinations(range(1, 4), 2)}
    x = TraceCoordinates(LocalData((0.5, 0.5, 0.5, 0.5)), pairs)
    report = classify_charts(x)
    assert report.admissible() == []
    assert report.best is None


def test_classify_charts_identity_coordinates():
    report = classify_charts(phi(identity_rep(4)))
    assert report.best is None


def test_classify_charts_conjugation_invariant():
    rng = SplitMix64(123)
    rep = generic(5, seed=44)
    p = random_unimodular(rng)
    a = classify_charts(phi(rep))
    b = classify_charts(phi(rep.conjugated(p)))
    assert a.best == b.best
    assert [e.admissible for e in a.entries] == [e.admissible for e in b.entries]


def test_chart_psi_matches_commutator_interpretation():
    # psi at (tr(AB), tr A, tr B) equals tr(A B A^-1 B^-1) - 2
    rep = generic(3, seed=55)
    x = phi(rep)
    a, b = omat(rep.matrix(2)), omat(rep.matrix(1))
    ainv, binv = omat(rep.matrix(2).adjugate()), omat(rep.matrix(1).adjugate())
    comm = otr(omul(omul(a, b), omul(ainv, binv)))
    got = chart_psi(x, ChartId(1, 2, 0))
    assert abs(got - (comm - 2.0)) <= 1e-10 * (1.0 + abs(comm))
