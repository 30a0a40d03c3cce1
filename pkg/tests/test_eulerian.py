from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypermaps import eulerian as eul
from hypermaps.series import SeriesSpace

from reference_values import REFERENCE_B


def test_B_closed_form_table():
    B = eul.compute_B(6, 6)
    got = [[B.coeff((n, p)) for p in range(6)] for n in range(6)]
    assert got == REFERENCE_B


def test_B_routes_agree():
    B = eul.compute_B(7, 7)
    assert eul.compute_B_substitution(eul.compute_T(7, 7)) == B
    assert eul.solve_quartic(7, 7) == B


def test_T_routes_agree():
    assert eul.compute_T(7, 6) == eul.compute_T_param(7, 6)


def test_T_frozen():
    T = eul.compute_T(4, 3)
    assert [T.coeff((n, 1)) for n in range(4)] == [1, 1, 3, 12]
    assert [T.coeff((n, 2)) for n in range(4)] == [2, 4, 15, 68]


def test_quartic_vanishes():
    rep = eul.quartic_residual(eul.compute_B(11, 11))
    assert rep.ok and rep.first_failure() is None


def test_quartic_detects_perturbation():
    B = eul.compute_B(6, 6)
    sp = SeriesSpace(B.variables, B.orders)
    rep = eul.quartic_residual(B + sp.gen("t") ** 3 * sp.gen("z") ** 2)
    assert not rep.ok
    assert rep.first_failure() is not None


def test_Z_and_critical_B():
    Z = eul.compute_Z(12)
    assert Z == eul.B_at_critical(12)
    assert Z.coeff((0,)) == 1


def test_asymptotic_report_small():
    rep = eul.asymptotic_ratios(120, 60, n_points=(30, 60, 120), p_points=(20, 40, 60))
    assert rep.Z0 == 1
    assert rep.B_ratio.monotone_tail((30, 60, 120))
    assert rep.C_ratio.monotone_tail((20, 40, 60))
    assert rep.Z_ratio.monotone_tail((20, 40, 60))


def test_asymptotic_bad_z():
    with pytest.raises(ValueError):
        eul.asymptotic_ratios(10, 10, z=Fraction(1, 3))


def test_B_coefficients_at_point_match_series():
    z0 = Fraction(1, 8)
    coeffs = eul.B_coefficients_at(z0, 4)
    B = eul.compute_B(5, 40)
    for n in range(5):
        partial = sum(B.coeff((n, p)) * z0 ** p for p in range(40))
        assert abs(float(partial - coeffs[n])) < 1e-20


@given(st.integers(1, 5), st.integers(1, 5))
@settings(max_examples=10, deadline=None)
def test_substitution_route_any_window(n, p):
    B = eul.compute_B(n, p)
    assert eul.compute_B_substitution(eul.compute_T(n, p)) == B


@given(st.integers(2, 8))
@settings(max_examples=7, deadline=None)
def test_B_at_t0_is_geometric(p):
    B = eul.compute_B(2, p)
    assert [B.coeff((0, k)) for k in range(p)] == [1] * p
