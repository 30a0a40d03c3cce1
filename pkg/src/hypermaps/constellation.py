"""Constellations with an alternating boundary.

Solves the series ``V`` and ``alpha_k`` for m-constellations with white face
weights ``x_1..x_d``, builds the rational parametrization of ``A(w)`` and
reverts it, and provides the companion formulas: monochromatic white
boundaries, rooted constellation counts, the Lagrange form of ``V**k`` and
the consistency checks tying these together.

Weights are either exact rationals or variable names (formal weights).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .series import (
    ConvergenceError,
    SeriesSpace,
    TruncatedSeries,
    compose,
    derive,
    integrate,
    revert,
)

Weight = Union[int, Fraction, str]


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class ConstellationParams:
    """``m`` and the white face weights ``x_1..x_d`` (numbers or names)."""

    m: int
    weights: Tuple[Weight, ...]
    t: str = "t"

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if len(self.weights) < 1:
            raise ValueError("at least one white face weight is required")
        object.__setattr__(self, "weights", tuple(
            w if isinstance(w, str) else Fraction(w) for w in self.weights))
        names = self.formal_names
        if self.t in names or len(set(names)) != len(names):
            raise ValueError("formal weight names must be distinct and differ from t")

    @classmethod
    def formal(cls, m: int, d: int) -> "ConstellationParams":
        return cls(m, tuple(f"x{i}" for i in range(1, d + 1)))

    @classmethod
    def eulerian(cls, m: int) -> "ConstellationParams":
        return cls(m, (1,))

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def formal_names(self) -> Tuple[str, ...]:
        return tuple(w for w in self.weights if isinstance(w, str))

    def space(self, t_order: int, x_order: Optional[int] = None) -> SeriesSpace:
        """Series space ``(t, formal weights)``; formal weights default to ``t_order``."""
        xo = t_order if x_order is None else x_order
        names = self.formal_names
        return SeriesSpace((self.t,) + names, (t_order,) + (xo,) * len(names))

    def weight_series(self, space: SeriesSpace) -> List[TruncatedSeries]:
        return [space.gen(w) if isinstance(w, str) else space.const(w) for w in self.weights]


@dataclass
class ConstellationSpectralData:
    params: ConstellationParams
    space: SeriesSpace
    V: TruncatedSeries
    alphas: List[TruncatedSeries]

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def d(self) -> int:
        return self.params.d


def _window_degree(space: SeriesSpace) -> int:
    return sum(o for o in space.orders if o is not None)


def solve_V(params: ConstellationParams, space: SeriesSpace) -> TruncatedSeries:
    """The solution of ``V = t + sum binom(mi-1, i) x_i V^((m-1)i)``."""
    m = params.m
    t = space.gen(params.t)
    xs = params.weight_series(space)
    linear = space.zero()
    terms = []
    for i, x in enumerate(xs, start=1):
        c = binom(m * i - 1, i)
        if (m - 1) * i == 1:
            linear = linear + x * c
        else:
            terms.append((x * c, (m - 1) * i))
    # for m = 2 the x_1 term is linear in V and is solved for directly
    c0 = linear.constant_term()
    if c0 == 1:
        raise ValueError("degenerate weights: the x_1 term cancels V (m = 2, x_1 = 1)")
    scale = 1 / (1 - linear)
    V = t * scale
    for _ in range(_window_degree(space) + 2):
        rhs = t
        for cx, e in terms:
            rhs = rhs + cx * V ** e
        new = rhs * scale
        if new == V:
            return new
        V = new
    raise ConvergenceError("fixed point for V did not stabilize")


def compute_alphas(V: TruncatedSeries, params: ConstellationParams,
                   space: SeriesSpace) -> List[TruncatedSeries]:
    m, d = params.m, params.d
    xs = params.weight_series(space)
    alphas = []
    for k in range(1, d + 1):
        a = space.zero()
        for i in range(k, d + 1):
            c = binom(m * i - 1, i - k)
            if c:
                a = a + xs[i - 1] * V ** ((m - 1) * i + k - 1) * c
        alphas.append(a)
    return alphas


def solve(params: ConstellationParams, t_order: int,
          x_order: Optional[int] = None) -> ConstellationSpectralData:
    """Solve ``V`` and ``alpha_1..alpha_d`` with ``t`` known modulo ``t**t_order``."""
    space = params.space(t_order, x_order)
    V = solve_V(params, space)
    return ConstellationSpectralData(params, space, V, compute_alphas(V, params, space))


# -- rational parametrization ---------------------------------------------------

def ring_variables(d: int) -> Tuple[str, ...]:
    return ("V",) + tuple(f"a{k}" for k in range(1, d + 1))


def parametrization(m: int, d: int, s_order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """``(w(s), A(w(s)))`` over the polynomial ring in ``V, a1..ad``."""
    ring = SeriesSpace(("s",) + ring_variables(d), (s_order,) + (None,) * (d + 1))
    s = ring.gen("s")
    P = ring.one()
    for k in range(1, d + 1):
        P = P + ring.gen(f"a{k}") * s ** k
    den = 1 / (1 + ring.gen("V") * s)
    w = s * P ** (m - 2) * den * den
    G = 1 - P ** (m - 1) * den
    return w, G


def alternating_A_polys(m: int, d: int, r_max: int) -> List[TruncatedSeries]:
    """``A_0..A_{r_max}`` as exact polynomials in ``V, a1..ad``."""
    w, G = parametrization(m, d, r_max + 2)
    s_of_w = revert(w, "s")
    A = compose(G, {"s": s_of_w})
    return [A.part("s", r + 1) for r in range(r_max + 1)]


def specialize(poly: TruncatedSeries, data: ConstellationSpectralData) -> TruncatedSeries:
    """Substitute the solved ``V`` and ``alpha_k`` into a ring polynomial."""
    assignment = {"V": data.V}
    for k, a in enumerate(data.alphas, start=1):
        if f"a{k}" in poly.variables:
            assignment[f"a{k}"] = a
    return compose(poly, assignment)


@dataclass
class AlternatingResult:
    data: ConstellationSpectralData
    polys: List[TruncatedSeries]
    series: List[TruncatedSeries]


def alternating_A(params: ConstellationParams, t_order: int, r_max: int,
                  x_order: Optional[int] = None) -> AlternatingResult:
    """``A_r`` for ``r <= r_max``, as ring polynomials and as series in ``t, x``."""
    if r_max < 0:
        raise ValueError("r_max must be nonnegative")
    data = solve(params, t_order, x_order)
    polys = alternating_A_polys(params.m, params.d, r_max)
    return AlternatingResult(data, polys, [specialize(p, data) for p in polys])


def eulerian_specialization(poly: TruncatedSeries, m: int) -> Dict[int, Fraction]:
    """Set ``a1 = V^(m-1)`` (the case d = 1, x_1 = 1): returns ``{power: coeff}``."""
    if poly.variables != ring_variables(1):
        raise ValueError("expected a polynomial in V, a1")
    out: Dict[int, Fraction] = {}
    for (v, a), c in poly.items():
        k = v + (m - 1) * a
        out[k] = out.get(k, 0) + c
    return {k: Fraction(c) for k, c in sorted(out.items()) if c}


def reference_A_expansion(m: int) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    """The reference expansion of ``A_1``, ``A_2`` for Eulerian m-angulations, as published."""
    def collect(pairs):
        out: Dict[int, Fraction] = {}
        for k, c in pairs:
            out[k] = out.get(k, 0) + Fraction(c)
        return {k: c for k, c in sorted(out.items()) if c}

    a1 = collect([(2, 1), (m, 2 * m - 3), (2 * m - 2, Fraction((m - 1) * (m - 2), 2))])
    a2 = collect([(3, 2), (m + 1, 6 * m - 10), (2 * m - 1, (m - 2) * (4 * m - 5)),
                  (3 * m - 3, -Fraction((m - 1) * (m - 2) * (2 * m - 3), 3))])
    return a1, a2


def A1_closed_form(m: int, d: int) -> TruncatedSeries:
    """``V^2 - (2m-3) V a1 + ((m-1)/2)((m-2) a1^2 - 2 a2)`` in the ring."""
    ring = SeriesSpace(ring_variables(d), (None,) * (d + 1))
    V, a1 = ring.gen("V"), ring.gen("a1")
    a2 = ring.gen("a2") if d >= 2 else ring.zero()
    return V * V - V * a1 * (2 * m - 3) + ((a1 * a1) * (m - 2) - a2 * 2) * Fraction(m - 1, 2)


# -- V^k by Lagrange inversion -------------------------------------------------------

def V_power_coeffs(k: int, m: int, order: int) -> TruncatedSeries:
    """``V**k`` for d = 1, x_1 = 1, from the Lagrange inversion formula.

    With ``V = t + (m-1) V^(m-1)`` the coefficient of ``t^((m-2)n+k)`` is
    ``k (m-1)^n / ((m-1)n+k) * binom((m-1)n+k, n)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if m < 3:
        raise ValueError("for m = 2 the Eulerian weights are degenerate")
    coeffs = {}
    n = 0
    while (m - 2) * n + k < order:
        e = (m - 1) * n + k
        coeffs[((m - 2) * n + k,)] = Fraction(k * (m - 1) ** n, e) * binom(e, n)
        n += 1
    return TruncatedSeries(("t",), (order,), coeffs)


def V_power_coeffs_shifted(k: int, m: int, order: int) -> TruncatedSeries:
    """The same sum with the shifted indexing ``k(m-1)^n/(mn+k) binom(mn+k, n) t^((m-1)n+k)``."""
    coeffs = {}
    n = 0
    while (m - 1) * n + k < order:
        coeffs[((m - 1) * n + k,)] = Fraction(k * (m - 1) ** n, m * n + k) * binom(m * n + k, n)
        n += 1
    return TruncatedSeries(("t",), (order,), coeffs)


# -- rooted constellations -------------------------------------------------------------

def vertex_count(m: int, profile: Sequence[int]) -> int:
    return sum((m * i - i - 1) * n for i, n in enumerate(profile, start=1)) + 2


def rooted_count(m: int, profile: Sequence[int]) -> Fraction:
    """Number of rooted m-constellations with ``profile[i-1]`` white faces of degree ``mi``."""
    if any(n < 0 for n in profile):
        raise ValueError("face counts must be nonnegative")
    N = sum(profile)
    if N == 0:
        raise ValueError("the profile must contain at least one face")
    v = vertex_count(m, profile)
    value = Fraction(m, m - 1) * Fraction(math.factorial(v + N - 2), math.factorial(v))
    for i, n in enumerate(profile, start=1):
        value *= Fraction(binom(m * i - 1, i) ** n, math.factorial(n))
    return value


def V_profile_coefficient(m: int, profile: Sequence[int]) -> Tuple[int, Fraction]:
    """``(e, c)`` such that ``[x^profile] V = c t^e`` by Lagrange inversion."""
    N = sum(profile)
    v = vertex_count(m, profile)
    value = Fraction(math.factorial(v + N - 2), math.factorial(v - 1))
    for i, n in enumerate(profile, start=1):
        value *= Fraction(binom(m * i - 1, i) ** n, math.factorial(n))
    return v - 1, value


def profile_coefficient(V: TruncatedSeries, params: ConstellationParams,
                        profile: Sequence[int]) -> TruncatedSeries:
    """``[x_1^n_1 ... x_d^n_d] V`` as a series in ``t``; all weights must be formal."""
    if len(params.formal_names) != params.d:
        raise ValueError("profile extraction needs formal weights")
    out = V
    for name, n in zip(params.formal_names, profile):
        out = out.part(name, n)
    return out


# -- monochromatic white boundary -------------------------------------------------------

def monochrom_F_white(data: ConstellationSpectralData, p: int) -> TruncatedSeries:
    """Generating function of constellations with a white boundary of length ``mp``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    m = data.m
    V = data.V
    xs = data.params.weight_series(data.space)
    F = V ** ((m - 1) * p + 1) * Fraction(1, (m - 1) * p + 1)
    for i, x in enumerate(xs, start=1):
        F = F - x * V ** ((m - 1) * (p + i)) * (Fraction(i, p + i) * binom(m * i - 1, i))
    return F * binom(m * p, p)


# -- rooted constellations via A_1 ---------------------------------------------------------

@dataclass
class RootedConsistency:
    """The three expressions of the rooted constellation series and the integral identity."""

    C_integral: TruncatedSeries
    C_noint: TruncatedSeries
    C_from_A1: TruncatedSeries
    lhs: TruncatedSeries
    rhs: TruncatedSeries

    @property
    def ok(self) -> bool:
        return (self.C_integral == self.C_noint and self.C_noint == self.C_from_A1
                and self.lhs == self.rhs)


def rooted_consistency(data: ConstellationSpectralData, A1: TruncatedSeries) -> RootedConsistency:
    m = data.m
    tv = data.params.t
    t = data.space.gen(tv)
    V = data.V
    a1 = data.alphas[0]
    a2 = data.alphas[1] if data.d >= 2 else data.space.zero()
    C_int = integrate(V - t, tv) * Fraction(m, m - 1)
    C_noint = a1 * (V * 2 - a1 * (m - 1)) * Fraction(m, 2) - (V * a1 + a2) * (m - 1)
    # the integral of V d(alpha_1), taken in t at fixed face weights
    lhs = integrate(V * derive(a1, tv), tv) * m
    rhs = (V * a1 + a2) * (m - 1)
    return RootedConsistency(C_int, C_noint, A1 - t * t, lhs, rhs)


def bipartite_check(polys: Sequence[TruncatedSeries], d: int) -> TruncatedSeries:
    """For m = 2: ``(1+Vs) A(w(s)) - (Vs - sum a_k s^k)``, rebuilt from the ``A_r``.

    This is ``y(z) A(1/y(z)^2) - (y(z) - x(z))`` divided by ``z``, with ``s = z^-2``;
    it vanishes up to ``s^(len(polys)+1)``.
    """
    order = len(polys) + 1
    w, _ = parametrization(2, d, order)
    ring = SeriesSpace(w.variables, w.orders)
    s = ring.gen("s")
    V = ring.gen("V")
    A = ring.zero()
    wk = ring.one()
    for p in polys:
        wk = wk * w
        A = A + wk * ring.lift(p)
    target = V * s
    for k in range(1, d + 1):
        target = target - ring.gen(f"a{k}") * s ** k
    return (1 + V * s) * A - target


# -- kernel method identities --------------------------------------------------------------

@dataclass
class KernelReport:
    """Residuals of the kernel-method identities; every entry should be zero."""

    xi_order: int
    t_order: int
    residuals: Dict[str, TruncatedSeries] = field(default_factory=dict)
    omega: Optional[TruncatedSeries] = None

    @property
    def failures(self) -> List[str]:
        return [k for k, r in self.residuals.items() if not r.is_zero()]

    @property
    def ok(self) -> bool:
        return not self.failures


def _evaluate_A(A_series: Sequence[TruncatedSeries], omega: TruncatedSeries,
                space: SeriesSpace) -> TruncatedSeries:
    out = space.zero()
    for Ar in reversed(A_series):
        out = (out + space.lift(Ar)) * omega
    return out


def kernel_identities_check(params: ConstellationParams, t_order: int,
                            xi_order: int) -> KernelReport:
    """Check the kernel-method identities up to ``x^-xi_order`` and ``t^t_order``.

    ``xi`` stands for ``1/x``.  With ``Y(x) = x^(m-1) Yb`` the kernel root
    ``omega`` is found by the fixed point ``omega = xi^m (1 - A(omega)) / Yb``.
    """
    from .spectral import HypermapWeights, monochromatic_series, solve_spectral

    m = params.m
    work = xi_order + m + 1  # omega/xi^m must still reach xi^xi_order
    tord = t_order + 1
    data = solve(params, tord)
    r_max = work // m + 1
    A_series = [specialize(p, data) for p in alternating_A_polys(m, params.d, r_max)]

    weights = HypermapWeights.constellation(m, params.weights, t=params.t)
    sd = solve_spectral(weights, tord, formal_order=data.space.orders[1] if params.formal_names else None)
    W = monochromatic_series(sd, "black", work)

    space = data.space.with_var("xi", work)
    xi = space.gen("xi")
    Yb = space.one()
    for p, Wp in enumerate(W):
        if p + m < work:
            Yb = Yb + space.lift(Wp) * xi ** (p + m)
    inv_Yb = 1 / Yb
    xim = xi ** m

    omega = space.zero()
    for _ in range(work + 2):
        new = xim * (1 - _evaluate_A(A_series, omega, space)) * inv_Yb
        if new == omega:
            break
        omega = new
    else:
        raise ConvergenceError("kernel root did not stabilize")
    A_om = _evaluate_A(A_series, omega, space)
    om_x = omega.shift("xi", -m)  # omega * x^m
    report = KernelReport(xi_order, t_order, omega=omega)
    final = {"xi": xi_order + 1, params.t: t_order + 1}

    def record(name, value):
        report.residuals[name] = value.truncate(final)

    record("omega", omega - xim * inv_Yb * inv_Yb)
    record("A(omega)", A_om - (1 - inv_Yb))
    record("K", 1 - A_om - om_x * Yb)
    record("R", om_x * (Yb - 1) * Yb - A_om)
    record("R_simplified", om_x * Yb * Yb - om_x * Yb - A_om)
    record("series_in_x^-m", TruncatedSeries(omega.variables, omega.orders,
                                             {e: c for e, c in omega.items() if e[0] % m}))

    # rational parametrization: omega(x(z)) = w(s), A(omega(x(z))) = 1 - P^(m-1)/(1+Vs), s = z^-m
    s_order = xi_order // m + 1
    sspace = data.space.with_var("s", s_order)
    s = sspace.gen("s")
    P = sspace.one()
    for k, a in enumerate(data.alphas, start=1):
        P = P + sspace.lift(a) * s ** k
    den = 1 / (1 + sspace.lift(data.V) * s)
    w_s = s * P ** (m - 2) * den * den
    q = s / P ** m  # xi^m after substituting x = x(z)
    omq = TruncatedSeries(("q",) + omega.variables[1:], (s_order,) + omega.orders[1:],
                          {(e[0] // m,) + e[1:]: c for e, c in omega.items() if e[0] % m == 0})
    Aq = _evaluate_A(A_series, omq, SeriesSpace(omq.variables, omq.orders))
    om_z = compose(omq, {"q": q})
    A_z = compose(Aq, {"q": q})
    record_s = {"s": s_order, params.t: t_order + 1}
    report.residuals["omega(x(z))"] = (om_z - w_s).truncate(record_s)
    report.residuals["A(omega(x(z)))"] = (A_z - (1 - P ** (m - 1) * den)).truncate(record_s)
    report.residuals["A_0"] = (A_series[0] - data.space.gen(params.t)).truncate({params.t: t_order + 1})
    return report
