import json
import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspin import hurwitz
from rspin.hurwitz import (HurwitzTable, OracleGuardError, Profile, brute_force_hurwitz,
                           calibrate_kp, connected_hurwitz, disconnected_coefficient,
                           kp_residual, oracle_comparison, oracle_profiles)
from rspin.partitions import partitions


def test_profile_basics():
    p = Profile(0, 2, (3, 1, 1))
    assert (p.n, p.K, p.m) == (3, 5, 3)
    assert p.parts == ((1, 0), (0, 0), (0, 0))
    assert Profile.from_m(2, (3,), 1) == Profile(0, 2, (3,))
    assert Profile.from_m(2, (2,), 1) is None


def test_profile_rejects_garbage():
    with pytest.raises(ValueError):
        Profile(0, 1, ())
    with pytest.raises(ValueError):
        Profile(0, 0, (1,))
    with pytest.raises(ValueError):
        Profile(0, 2, (2, 1)).m


def test_invalid_profile_is_zero_with_warning(caplog):
    with caplog.at_level(logging.WARNING):
        assert connected_hurwitz(Profile(0, 2, (2, 1))) == 0
    assert "non-integral" in caplog.text


@given(st.integers(1, 4), st.integers(1, 5).flatmap(lambda K: st.sampled_from(partitions(K))),
       st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_oracle_agrees_on_random_cells(r, mu, m):
    p = Profile.from_m(r, mu, m)
    if p is None:
        return
    assert connected_hurwitz(p) == brute_force_hurwitz(p, labeled=True)


def test_oracle_guard():
    with pytest.raises(OracleGuardError):
        brute_force_hurwitz(Profile(0, 1, (3, 3)))


def test_oracle_comparison_covers_non_integral_cells():
    rows = oracle_comparison(3, 2, (2,))
    assert all(a == b for *_, a, b in rows)
    assert any(Profile.from_m(r, mu, m) is None for r, mu, m, *_ in rows)


def test_oracle_profiles_count():
    assert len(oracle_profiles()) == 80


def test_degree_zero_coefficient():
    # m = 0: only the identity; disconnected count is 1/K! times |C_mu| [mu = 1^K]
    assert disconnected_coefficient(1, (1, 1), 0) == Fraction(1, 2)


def test_table_roundtrip_and_disagreement():
    t = HurwitzTable().fill([Profile(0, 1, (2, 1)), Profile(0, 2, (3,))], oracle=True)
    assert t.disagreements() == []
    payload = json.loads(t.to_json())
    assert payload["schema"] == "hurwitz-table/1"
    assert len(payload["rows"]) == 4
    assert t.to_csv().splitlines()[0] == "g,r,k,m,h,provenance"
    with pytest.raises(ValueError):
        t.add(Profile(0, 1, (2, 1)), Fraction(5), "character")
    with pytest.raises(ValueError):
        t.add(Profile(0, 1, (2, 1)), Fraction(4), "guess")


def test_kp_calibration_is_unique():
    conv, table = calibrate_kp()
    assert conv.describe() in table
    passing = [k for k, row in table.items() if all(v == "0" for v in row.values())]
    assert passing == [conv.describe()]


@pytest.mark.parametrize("r", [1, 2])
def test_kp_residual_zero(r):
    rep = kp_residual(r, degree_bound=4)
    assert rep.ok and rep.residual == 0
    assert rep.to_dict()["schema"] == "kp-report/1"


def test_kp_detects_a_perturbation():
    conv, _ = calibrate_kp()
    W, B = 8, hurwitz.default_beta_order(1, 8)
    F = dict(hurwitz.hurwitz_free_energy(1, W, B))
    # p_1^4 enters F_1111; a bare p_4 term would be invisible to this equation
    key = next(k for k in F if k[0] == (1, 1, 1, 1))
    F[key] += 1
    res = hurwitz.kp_residual_series(F, W, B, conv)
    assert any(v != 0 for v in res.values())
