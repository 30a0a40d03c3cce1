from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypermaps import constellation as cst
from hypermaps.spectral import (
    HypermapWeights, condition_residuals, constellation_pattern, monochromatic_series,
    monochromatic_W, origin_jacobian, solve_spectral,
)


def all_zero(residuals):
    return [k for k, v in residuals.items() if not v.is_zero()]


def test_eulerian_V_matches_constellation_solver():
    w = HypermapWeights.constellation(3, [1])
    sd = solve_spectral(w, 8)
    assert sd.V == cst.solve(cst.ConstellationParams.eulerian(3), 8).V


@pytest.mark.parametrize("m,d", [(2, 2), (3, 1), (3, 2), (4, 1)])
def test_constellation_pattern_formal(m, d):
    params = cst.ConstellationParams.formal(m, d)
    sd = solve_spectral(HypermapWeights.constellation(m, params.weights), 6, formal_order=3)
    data = cst.solve(params, 6, x_order=3)
    assert all_zero(condition_residuals(sd)) == []
    assert all_zero(constellation_pattern(sd, m)) == []
    for k in range(1, d + 1):
        assert sd.a[m * k - 1] == data.alphas[k - 1]


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_white_boundary_matches_closed_form(p):
    m, params = 3, cst.ConstellationParams.formal(3, 2)
    sd = solve_spectral(HypermapWeights.constellation(m, params.weights), 7, formal_order=3)
    data = cst.solve(params, 7, x_order=3)
    W = monochromatic_series(sd, "white", m * p + 1)
    assert W[m * p] == cst.monochrom_F_white(data, p)
    if p:
        assert W[m * p - 1].is_zero()


def test_black_boundary_eulerian_is_symmetric():
    sd = solve_spectral(HypermapWeights.constellation(3, [1]), 8)
    assert monochromatic_series(sd, "black", 6) == monochromatic_series(sd, "white", 6)


def test_black_W_frozen():
    sd = solve_spectral(HypermapWeights.constellation(3, [1]), 8)
    W3 = monochromatic_W(sd, "black", 3)
    assert [W3.coeff((k,)) for k in range(8)] == [0, 0, 0, 1, 3, 12, 56, 288]


def test_degree_two_faces_numeric():
    w = HypermapWeights({2: Fraction(1, 3), 3: 1}, {2: Fraction(1, 2), 3: Fraction(1, 4)})
    sd = solve_spectral(w, 6)
    assert all_zero(condition_residuals(sd)) == []


def test_singular_origin_raises():
    w = HypermapWeights({2: 1}, {2: 1})
    with pytest.raises(ZeroDivisionError):
        solve_spectral(w, 4)


def test_degree_one_rejected():
    with pytest.raises(ValueError):
        HypermapWeights({1: 1}, {3: 1})


def test_origin_jacobian_shape():
    w = HypermapWeights({3: 1}, {3: 1, 4: 2})
    J = origin_jacobian(w)
    assert len(J) == len(J[0]) == 1 + w.d_white + w.d


rational = st.fractions(min_value=-1, max_value=1, max_denominator=6)


@given(st.dictionaries(st.integers(2, 4), rational, min_size=1, max_size=3),
       st.dictionaries(st.integers(2, 4), rational, min_size=1, max_size=3))
@settings(max_examples=25, deadline=None)
def test_conditions_hold_for_random_weights(black, white):
    w = HypermapWeights(black, white)
    try:
        sd = solve_spectral(w, 5)
    except ZeroDivisionError:
        return  # singular linearization at the origin
    assert all_zero(condition_residuals(sd)) == []


@given(st.integers(2, 4), st.lists(rational, min_size=1, max_size=2))
@settings(max_examples=20, deadline=None)
def test_constellation_specialization_random(m, xs):
    if m == 2 and xs[0] == 1:
        return
    sd = solve_spectral(HypermapWeights.constellation(m, xs), 6)
    data = cst.solve(cst.ConstellationParams(m, tuple(xs)), 6)
    assert all_zero(constellation_pattern(sd, m)) == []
    assert sd.V == data.V
    for k in range(1, len(xs) + 1):
        assert sd.a[m * k - 1] == data.alphas[k - 1]
