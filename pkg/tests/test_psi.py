from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspin import psi
from rspin.psi import PsiIndex, psi_intersection


def test_off_dimension_is_zero():
    assert psi_intersection(1, (2,)) == 0
    assert psi_intersection(0, (0, 0, 1)) == 0


def test_unstable_rejected():
    with pytest.raises(ValueError):
        psi_intersection(0, (0, 0))


def test_index_normalises():
    assert PsiIndex.of(1, [2, 0, 1]).d == (0, 1, 2)


@st.composite
def on_dimension(draw):
    g = draw(st.integers(0, 3))
    n = draw(st.integers(max(1, 3 - 2 * g), 4))
    dim = 3 * g - 3 + n
    cuts = sorted(draw(st.lists(st.integers(0, dim), min_size=n - 1, max_size=n - 1)))
    d = [b - a for a, b in zip([0] + cuts, cuts + [dim])]
    return g, tuple(d)


@given(on_dimension())
@settings(max_examples=60, deadline=None)
def test_dilaton_equation(gd):
    g, d = gd
    n = len(d)
    assert psi_intersection(g, d + (1,)) == (2 * g - 2 + n) * psi_intersection(g, d)


@given(on_dimension())
@settings(max_examples=60, deadline=None)
def test_string_equation(gd):
    g, d = gd
    # <tau_0 prod tau_{d_i}> on dimension one higher
    lifted = tuple(x + 1 if i == 0 else x for i, x in enumerate(d))
    lhs = psi_intersection(g, (0,) + lifted)
    rhs = sum(psi_intersection(g, lifted[:j] + (lifted[j] - 1,) + lifted[j + 1:])
              for j in range(len(lifted)) if lifted[j] > 0)
    assert lhs == rhs


def test_genus_one_closed_form():
    # <tau_1^n>_1 = (n-1)!/24
    from math import factorial
    for n in range(1, 6):
        assert psi_intersection(1, (1,) * n) == Fraction(factorial(n - 1), 24)


def test_cache_roundtrip(tmp_path):
    psi_intersection(3, (2, 3, 4))
    path = tmp_path / "psi.json"
    saved = psi.save_cache(path)
    assert saved == psi.cache_size() > 0
    value = psi_intersection(3, (2, 3, 4))
    psi.clear_cache()
    assert psi.cache_size() == 0
    assert psi.load_cache(path) == saved
    assert psi_intersection(3, (2, 3, 4)) == value


def test_cache_other_version_ignored(tmp_path):
    path = tmp_path / "psi.json"
    path.write_text('{"version": 999, "records": [[1, [1], "5"]]}')
    assert psi.load_cache(path) == 0
    assert psi.load_cache(tmp_path / "missing.json") == 0
