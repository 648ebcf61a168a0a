import json
from fractions import Fraction
from itertools import product

import pytest

from rspin.cohft import (ConventionMismatch, CorrelatorTable, F_coefficient, Metric, StableGraph,
                         f_number, flat_product, givental_correlator, idempotent,
                         r_matrix_coefficient, stable_graphs, symplectic_defect, tqft_value)
from rspin.exact import CycExt
from rspin.hurwitz import Profile, connected_hurwitz
from rspin.psi import psi_intersection


def test_tqft_selection_rule():
    assert tqft_value(0, (0, 0, 0), 1) == 1
    assert tqft_value(0, (1, 1, 0), 2) == Fraction(1, 2)
    assert tqft_value(0, (1, 0, 0), 2) == 0
    assert tqft_value(1, (0,), 3) == 3
    with pytest.raises(ValueError):
        tqft_value(0, (3, 0, 0), 3)


@pytest.mark.parametrize("r", range(1, 6))
def test_metric_inverse(r):
    met = Metric(r)
    for a in range(r):
        for c in range(r):
            s = sum(met.eta(a, b) * met.eta_inv(b, c) for b in range(r))
            assert s == (1 if a == c else 0)
        assert met.partner(met.partner(a)) == a


@pytest.mark.parametrize("r", [2, 3, 4])
def test_idempotents(r):
    for i in range(r):
        for j in range(r):
            prod_ = flat_product(r, idempotent(r, i), idempotent(r, j))
            want = idempotent(r, i) if i == j else [CycExt.const(r, 0)] * r
            assert prod_ == want


@pytest.mark.parametrize("r", range(1, 6))
def test_r_matrix_symplectic(r):
    assert symplectic_defect(r, 7) == []
    assert r_matrix_coefficient(r, 0, 0) == 1


def test_stable_graph_counts():
    assert len(stable_graphs(0, 3)) == 1
    assert len(stable_graphs(0, 4)) == 4
    assert len(stable_graphs(0, 5)) == 26
    assert len(stable_graphs(1, 1)) == 2
    assert len(stable_graphs(1, 2)) == 5
    auts = sorted(G.automorphisms() for G in stable_graphs(2, 0))
    assert auts == [1, 2, 2, 2, 8, 8, 12]


def test_stable_graph_canonical():
    G = StableGraph((0, 1), ((0, 1),), (0, 0, 0))
    H = StableGraph((1, 0), ((0, 1),), (1, 1, 1))
    assert G.canonical() == H.canonical()
    assert G.genus == 1 and G.is_stable()


@pytest.mark.parametrize("r", range(1, 7))
def test_degree_zero_part(r):
    for a in product(range(r), repeat=3):
        assert givental_correlator(0, [(x, 0) for x in a], r) == tqft_value(0, a, r)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("g,d", [(0, (1, 0, 0, 0)), (1, (1,)), (0, (1, 1, 0, 0, 0)), (1, (1, 1))])
def test_top_degree_is_tqft_times_psi(r, g, d):
    for a in product(range(r), repeat=len(d)):
        val = givental_correlator(g, list(zip(a, d)), r)
        assert val == tqft_value(g, a, r) * psi_intersection(g, d)


def test_genus_one_r1():
    assert givental_correlator(1, [(0, 1)], 1) == Fraction(1, 24)
    assert givental_correlator(1, [(0, 0)], 1) == Fraction(-1, 24)


def test_correlator_rejects_unstable():
    with pytest.raises(ValueError):
        givental_correlator(0, [(0, 0), (0, 0)], 2)


@pytest.mark.parametrize("r,g,k", [(1, 0, (1, 1, 1)), (1, 1, (2,)), (2, 0, (3, 1, 1)),
                                   (2, 1, (1,)), (3, 0, (2, 2, 2, 1)), (3, 1, (2,))])
def test_f_number_equals_hurwitz(r, g, k):
    p = Profile(g, r, k)
    assert f_number(p) == connected_hurwitz(p)


def test_f_coefficient_two_routes():
    assert F_coefficient(0, 2, (1, 2, 2)) == F_coefficient(0, 2, (2, 2, 1))
    assert issubclass(ConventionMismatch, AssertionError)


def test_f_number_unstable():
    with pytest.raises(ValueError):
        f_number(Profile(0, 1, (1, 1)))


def test_correlator_table_json():
    t = CorrelatorTable(2).fill(0, 3)
    payload = json.loads(t.to_json())
    assert payload["schema"] == "correlator-table/1"
    assert {row["value"] for row in payload["rows"]} <= {"0", "1/2"}
