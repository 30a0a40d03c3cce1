from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypermaps.series import (
    LaurentSeries, SeriesSpace, TruncatedSeries, TruncationError, VariableMismatch,
    compose, derive, integrate, inverse, rational_power, revert, sqrt,
)

N = 7
T = SeriesSpace(("t",), (N,))
TX = SeriesSpace(("t", "x"), (5, 4))

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def univariate(draw_coeffs, constant=None):
    coeffs = {(k,): c for k, c in enumerate(draw_coeffs)}
    if constant is not None:
        coeffs[(0,)] = Fraction(constant)
    return TruncatedSeries(("t",), (N,), coeffs)


unit_series = st.lists(small, min_size=N, max_size=N).map(lambda cs: univariate(cs, 1))
any_series = st.lists(small, min_size=N, max_size=N).map(univariate)
bivariate = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 3)), small, max_size=8).map(
    lambda d: TruncatedSeries(("t", "x"), (5, 4), d))


# -- frozen values ---------------------------------------------------------------

def test_reversion_catalan_like():
    s = T.gen("t")
    f = s - 2 * s ** 2 + 3 * s ** 3 - 4 * s ** 4
    g = revert(f, "t")
    assert [g.coeff((k,)) for k in range(5)] == [0, 1, 2, 5, 14]


def test_sqrt_central_binomial():
    t = T.gen("t")
    r = sqrt(1 - 8 * t)
    assert [r.coeff((k,)) for k in range(6)] == [1, -4, -8, -32, -160, -896]


def test_compose_fibonacci():
    u = SeriesSpace(("u",), (N,)).gen("u")
    t = T.gen("t")
    f = compose(1 / (1 - u), {"u": t + t * t})
    assert [f.coeff((k,)) for k in range(5)] == [1, 1, 2, 3, 5]


def test_truncation_window_is_respected():
    t = T.gen("t")
    assert (t ** N).is_zero()
    assert (1 / (1 - t)).nterms == N


def test_exact_series_has_no_window():
    ring = SeriesSpace(("V",), (None,))
    V = ring.gen("V")
    p = (1 + V) ** 5
    assert p.coeff((5,)) == 1 and p.degree("V") == 5


def test_variable_mismatch():
    a = SeriesSpace(("t",), (3,)).gen("t")
    b = SeriesSpace(("x",), (3,)).gen("x")
    with pytest.raises(VariableMismatch):
        a + b


def test_inverse_needs_unit():
    with pytest.raises((ZeroDivisionError, TruncationError, ValueError)):
        inverse(T.gen("t"))


def test_revert_needs_linear_term_one():
    t = T.gen("t")
    with pytest.raises(ValueError):
        revert(2 * t, "t")


def test_laurent_inverse():
    xi = SeriesSpace(("xi",), (N,))
    x = LaurentSeries(xi.one(), 1, "xi")  # the monomial x
    f = x + 2 + x ** -1
    assert f.terms().keys() == {1, 0, -1}
    g = f.inverse()
    assert g.shift == -1
    prod = f * g
    assert prod.coefficient(0).constant_term() == 1
    assert all(prod.coefficient(k).is_zero() for k in range(-N + 2, 0))


# -- properties --------------------------------------------------------------------

@given(unit_series)
def test_inverse_property(f):
    assert f * inverse(f) == T.one()


@given(unit_series)
def test_sqrt_squares_back(f):
    assert sqrt(f) ** 2 == f


@given(unit_series)
def test_rational_power_half_is_sqrt(f):
    assert rational_power(f, Fraction(1, 2)) == sqrt(f)


@given(unit_series, small, small)
def test_rational_power_exponent_law(f, a, b):
    assert rational_power(f, a) * rational_power(f, b) == rational_power(f, a + b)


@given(st.lists(small, min_size=N - 2, max_size=N - 2))
def test_revert_is_compositional_inverse(tail):
    t = T.gen("t")
    f = t + sum((c * t ** (k + 2) for k, c in enumerate(tail)), T.zero())
    g = revert(f, "t")
    assert compose(f, {"t": g}) == t
    assert compose(g, {"t": f}) == t


@given(any_series)
def test_derive_integrate_roundtrip(f):
    assert derive(integrate(f, "t"), "t") == f


@given(bivariate, bivariate, bivariate)
@settings(max_examples=50)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TX.zero()


@given(bivariate)
def test_product_rule(a):
    b = 1 + TX.gen("x") + TX.gen("t") ** 2
    lhs = derive(a * b, "t")
    rhs = derive(a, "t") * b + a * derive(b, "t")
    assert lhs == rhs
