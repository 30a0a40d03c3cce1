"""Eulerian triangulations with an alternating boundary.

``T(t, u) = sum T[n, r] t^n u^r`` counts triangulations with ``n`` black
triangles and a boundary of length ``2r``; ``B(t, z)`` counts those with a
semi-simple boundary.  They are related by ``T(t, u) = B(t, u T(t, u))``.
This module computes both series by several independent routes, checks the
quartic equation satisfied by ``B``, and tabulates the asymptotic ratios at
the critical point ``t = 1/8``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .constellation import ConstellationParams, alternating_A
from .series import SeriesSpace, TruncatedSeries, compose, rational_power, revert, sqrt


def _space(t_order: int, second: str, order: int) -> SeriesSpace:
    return SeriesSpace(("t", second), (t_order, order))


# -- T(t, u) ---------------------------------------------------------------------------

def compute_T(t_order: int, u_order: int) -> TruncatedSeries:
    """``T`` from the constellation series: ``A_r = sum_n T[n, r] t^(n+r+1)``."""
    res = alternating_A(ConstellationParams.eulerian(3), t_order + u_order, u_order - 1)
    coeffs = {}
    for r, Ar in enumerate(res.series):
        for (k,), c in Ar.items():
            n = k - r - 1
            if 0 <= n < t_order:
                coeffs[(n, r)] = c
    return TruncatedSeries(("t", "u"), (t_order, u_order), coeffs)


def compute_T_param(t_order: int, u_order: int) -> TruncatedSeries:
    """``T`` from its rational parametrization in ``(V, W)``.

    With ``t = V - 2V^2`` and ``u = W(1-2V)(1+VW)/(1+W)^2``,
    ``T = (1+W)(1-2V-V^2 W) / ((1-2V)(1+VW))``.  Writing ``W' = (1-2V) W``
    makes ``u = W' + O(W'^2)``, which is reverted in ``W'``.
    """
    vs = SeriesSpace(("u", "V"), (u_order, t_order))
    Wp, V = vs.gen("u"), vs.gen("V")  # 'u' holds W' before reversion
    k = 1 / (1 - 2 * V)
    W = Wp * k
    u_of_Wp = Wp * (1 + V * W) / (1 + W) ** 2
    Wp_of_u = revert(u_of_Wp, "u")
    W_of_u = Wp_of_u * k
    T_uV = (1 + W_of_u) * (1 - 2 * V - V * V * W_of_u) * k / (1 + V * W_of_u)
    ts = SeriesSpace(("t",), (t_order,))
    V_of_t = revert(ts.gen("t") - 2 * ts.gen("t") ** 2, "t")
    target = SeriesSpace(("t", "u"), (t_order, u_order))
    return compose(T_uV, {"V": target.lift(V_of_t), "u": target.gen("u")})


# -- B(t, z) -----------------------------------------------------------------------------

def compute_B(t_order: int, z_order: int) -> TruncatedSeries:
    """Closed form ``(8t + 8z + (1 - S - 4z) sqrt(((1+S)^2 - 4z)/(1-z))) / (16t)``, ``S = sqrt(1-8t)``."""
    sp = _space(t_order + 1, "z", z_order)
    t, z = sp.gen("t"), sp.gen("z")
    S = sqrt(1 - 8 * t)
    quarter = ((1 + S) ** 2 - 4 * z) / (4 * (1 - z))  # constant term 1
    root = 2 * sqrt(quarter)
    num = 8 * t + 8 * z + (1 - S - 4 * z) * root
    return num.shift("t", -1) / 16


def compute_B_substitution(T: TruncatedSeries) -> TruncatedSeries:
    """Invert ``T(t, u) = B(t, u T(t, u))``: ``B(t, z) = T(t, psi(t, z))`` with ``psi`` the inverse of ``u T``."""
    uT = T.shift("u", 1).truncate({"u": T.order("u")})
    psi = revert(uT, "u")
    B = compose(T, {"u": psi})
    return B.rename({"u": "z"})


def quartic(B: TruncatedSeries) -> TruncatedSeries:
    """The quartic polynomial in ``B`` with coefficients in ``t, z``."""
    sp = SeriesSpace(B.variables, B.orders)
    t, z = sp.gen("t"), sp.gen("z")
    zm = z - 1
    c4 = 16 * t ** 3 * zm ** 2
    c3 = -32 * t ** 2 * zm ** 2 * (t + z)
    c2 = t * zm * (24 * t ** 2 * z + 32 * t * z ** 2 + 16 * z ** 3 - 16 * t ** 2 - 52 * t * z - 16 * z ** 2 - z)
    c1 = -z * zm * (8 * t ** 2 - 20 * t - 1) * (t + z)
    c0 = z ** 2 * (t + 1) ** 3
    return (((c4 * B + c3) * B + c2) * B + c1) * B + c0


@dataclass
class QuarticReport:
    residual: TruncatedSeries
    window: Tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    def first_failure(self) -> Optional[Tuple[int, ...]]:
        for e, _ in self.residual.items():
            return e
        return None


def quartic_residual(B: TruncatedSeries) -> QuarticReport:
    res = quartic(B)
    return QuarticReport(res, (B.order("t"), B.order("z")))


def solve_quartic(t_order: int, z_order: int) -> TruncatedSeries:
    """The power-series root of the quartic, order by order in ``t``.

    At ``t = 0`` the quartic reduces to ``z^2 ((z-1) B + 1)``, so
    ``B(0, z) = 1/(1-z)``; at each higher order the new coefficient enters
    linearly with the factor ``z^2 (z-1)``, so the root is unique.  Dividing
    by ``z^2`` costs two orders in ``z`` per step, which is budgeted upfront.
    """
    zo = z_order + 2 * t_order
    sp = _space(t_order, "z", zo)
    t, z = sp.gen("t"), sp.gen("z")
    B = sp.lift(1 / (1 - z))
    for n in range(1, t_order):
        r = quartic(B).part("t", n)
        r = r.shift("z", -2)
        zs = SeriesSpace(r.variables, r.orders)
        delta = r / (1 - zs.gen("z"))  # -r / (z^2 (z-1))
        B = B + t ** n * sp.lift(delta)
    return B.truncate({"z": z_order})


# -- Z(p) ---------------------------------------------------------------------------------

def compute_Z(order: int) -> TruncatedSeries:
    """``sum Z(p) z^p = (1 + 8z + (1-4z)^(3/2) (1-z)^(-1/2)) / 2``."""
    sp = SeriesSpace(("z",), (order,))
    z = sp.gen("z")
    s = sqrt(1 - 4 * z)
    return (1 + 8 * z + (1 - 4 * z) * s / sqrt(1 - z)) / 2


def B_at_critical(order: int) -> TruncatedSeries:
    """``B(1/8, z)`` from the closed form, where ``sqrt(1 - 8t)`` vanishes."""
    sp = SeriesSpace(("z",), (order,))
    z = sp.gen("z")
    return (1 + 8 * z + (1 - 4 * z) * sqrt((1 - 4 * z) / (1 - z))) / 2


# -- asymptotics ---------------------------------------------------------------------------

@dataclass
class RatioTable:
    name: str
    points: List[Tuple[int, object]] = field(default_factory=list)

    def deviation(self, k: int):
        return abs(dict(self.points)[k] - 1)

    def monotone_tail(self, ks: Sequence[int]) -> bool:
        devs = [self.deviation(k) for k in ks]
        return all(a > b for a, b in zip(devs, devs[1:]))


@dataclass
class AsymptoticReport:
    z: Fraction
    B_ratio: RatioTable
    C_ratio: RatioTable
    Z_ratio: RatioTable
    Z0: Fraction
    precision_digits: int


def B_coefficients_at(z0: Fraction, n_max: int) -> List[Fraction]:
    """Exact ``[t^n] B(t, z0)`` for ``n <= n_max``."""
    N = n_max + 2
    ts = SeriesSpace(("t",), (N,))
    t = ts.gen("t")
    S = rational_power(1 - 8 * t, Fraction(1, 2))
    quarter = ((1 + S) ** 2 - 4 * z0) * (Fraction(1, 4) / (1 - z0))
    root = rational_power(quarter, Fraction(1, 2)) * 2
    num = 8 * t + 8 * z0 + (1 - 4 * z0 - S) * root
    return [num.coeff((n + 1,)) / 16 for n in range(n_max + 1)]


def C_prefactor_coefficients(p_max: int) -> List[Fraction]:
    """``[z^k] ((1-z)(1-4z)^3)^(-1/2)`` for ``k < p_max``."""
    sp = SeriesSpace(("z",), (max(p_max, 1),))
    z = sp.gen("z")
    g = rational_power((1 - z) * (1 - 4 * z) ** 3, Fraction(-1, 2))
    return [g.coeff((k,)) for k in range(p_max)]


def asymptotic_ratios(n_max: int, p_max: int, z: Fraction = Fraction(1, 8),
                      n_points: Sequence[int] = (), p_points: Sequence[int] = (),
                      digits: int = 50) -> AsymptoticReport:
    """Ratios of exact coefficients to their stated asymptotic forms.

    All coefficients are exact rationals; mpmath at ``digits`` decimal digits
    is used only for the constants and the final division.
    """
    import mpmath

    z = Fraction(z)
    if not 0 < z < Fraction(1, 4):
        raise ValueError("z must lie strictly between 0 and 1/4")
    with mpmath.workdps(digits):
        zf = mpmath.mpf(z.numerator) / z.denominator
        pi = mpmath.pi
        lead = mpmath.mpf(3) / 2 * zf / mpmath.sqrt(pi * (zf - 1) * (4 * zf - 1) ** 3)
        coeffs = B_coefficients_at(z, n_max)
        bt = RatioTable("[t^n]B(t,z)")
        for n in (n_points or range(1, n_max + 1)):
            exact = mpmath.mpf(coeffs[n].numerator) / coeffs[n].denominator
            bt.points.append((n, exact / (lead * mpmath.mpf(8) ** n * mpmath.mpf(n) ** mpmath.mpf(-2.5))))
        pre = C_prefactor_coefficients(p_max)
        ct = RatioTable("C(p)")
        cconst = mpmath.mpf(3) / (2 * mpmath.sqrt(pi))
        for p in (p_points or range(1, p_max + 1)):
            c = pre[p - 1]
            exact = cconst * mpmath.mpf(c.numerator) / c.denominator
            ct.points.append((p, exact / (mpmath.sqrt(3) / (2 * pi) * mpmath.mpf(4) ** p * mpmath.sqrt(p))))
        Zs = compute_Z(p_max + 1)
        zt = RatioTable("Z(p)")
        zconst = mpmath.sqrt(3 / pi) / 4
        for p in (p_points or range(1, p_max + 1)):
            c = Zs.coeff((p,))
            exact = mpmath.mpf(c.numerator) / c.denominator
            zt.points.append((p, exact / (zconst * mpmath.mpf(4) ** p * mpmath.mpf(p) ** mpmath.mpf(-2.5))))
        return AsymptoticReport(z, bt, ct, zt, Zs.coeff((0,)), digits)
