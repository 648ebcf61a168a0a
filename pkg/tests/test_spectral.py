from fractions import Fraction

import pytest

from rspin.exact import CycExt
from rspin.spectral import (doss_assemble, eo_direct, inverse_branch, lemma_report,
                            local_odd_expansion, scaling_cells, scaling_identity_check,
                            triangle_report, u_matrix_bernoulli, u_matrix_direct,
                            u_substitution, v_bernoulli, xi_closed_form, xi_direct, xi_tilde)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_local_coordinate(r):
    # z^2 starts at -(r/2) u^2
    s = u_substitution(r, 5)
    assert s[0] == s[1] == 0 and s[2] == Fraction(-r, 2)
    U = inverse_branch(r, 6)
    assert U[0] == 0 and U[1] == 1
    assert inverse_branch(r, 6, sign=-1)[1] == -1


@pytest.mark.parametrize("r", range(1, 5))
def test_v_routes(r):
    assert local_odd_expansion(r, 6) == v_bernoulli(r, 6)
    assert local_odd_expansion(r, 4, sign=-1) == [-x for x in v_bernoulli(r, 4)]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_u_routes(r):
    for i1 in range(r):
        for i2 in range(r):
            assert u_matrix_direct(r, i1, i2, 4) == u_matrix_bernoulli(r, i1, i2, 4)


@pytest.mark.parametrize("r", range(1, 7))
def test_u0_identity(r):
    for i1 in range(r):
        for i2 in range(r):
            want = CycExt.const(r, 1 if i1 == i2 else 0)
            assert u_matrix_bernoulli(r, i1, i2, 1)[0] == want


@pytest.mark.parametrize("r", range(1, 5))
def test_xi_routes(r):
    for a in range(r):
        x = xi_tilde(r, a, 6)
        assert x.agree
        assert x.closed == xi_closed_form(r, a, 6) == xi_direct(r, a, 6)


def test_xi_bad_index():
    with pytest.raises(ValueError):
        xi_tilde(2, 2, 3)


def test_xi_r1_values():
    # (n + 0)^n / n! for r = 1, a = 0
    assert xi_closed_form(1, 0, 4) == [1, 1, 2, Fraction(9, 2)]


def test_lemma_report_small():
    rep = lemma_report(v_max_r=2, v_order=4, u_max_r=2, u_order=3, xi_max_r=2, xi_order=4,
                       unit_max_r=3)
    assert rep["ok"] and rep["schema"] == "spectral-lemmas/1"


def test_scaling_cells():
    assert [len(scaling_cells(r)) for r in (1, 2)] == [3, 14]


@pytest.mark.parametrize("r", [1, 2])
def test_scaling_identity(r):
    for g, pairs in scaling_cells(r):
        assert scaling_identity_check(g, r, pairs).holds


@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("gn", [(0, 3), (1, 1)])
def test_eo_equals_doss(r, gn):
    g, n = gn
    assert eo_direct(g, n, r, 3) == doss_assemble(g, r, n, 3)


def test_eo_direct_scope():
    with pytest.raises(ValueError):
        eo_direct(0, 4, 1, 2)


def test_doss_r1_genus0_values():
    # W_{0,3} coefficient of e^{x1+x2+x3}: k1 k2 k3 h / m! with h = 24, m = 4
    assert doss_assemble(0, 1, 3, 1)[(1, 1, 1)] == 1


def test_triangle_report():
    rep = triangle_report(rs=(1,), k_bound=3)
    assert rep["ok"]
