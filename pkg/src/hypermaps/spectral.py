"""Spectral curve of general hypermaps with bounded face degrees.

The curve is given by the Laurent polynomials

    x(z) = z + sum_{k<d~} a_k z^-k,    y(z) = V/z + sum_{k<d} b_k z^k,

whose coefficients are fixed by two conditions on
``y - sum t_i x^(i-1)`` (near ``z = oo``) and ``x - sum t~_i y^(i-1)``
(near ``z = 0``).  From the solved curve the monochromatic generating
functions ``W_p`` (black boundary) and ``W~_p`` (white boundary) are read
off by series reversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .series import ConvergenceError, SeriesSpace, TruncatedSeries, compose, revert

Weight = Union[int, Fraction, str]
Laurent = Dict[int, TruncatedSeries]


def _clean(w: Weight) -> Weight:
    return w if isinstance(w, str) else Fraction(w)


@dataclass(frozen=True)
class HypermapWeights:
    """Inner face weights ``t_i`` (black) and ``t~_i`` (white), degrees >= 2."""

    black: Tuple[Tuple[int, Weight], ...]
    white: Tuple[Tuple[int, Weight], ...]
    t: str = "t"

    def __init__(self, black: Mapping[int, Weight], white: Mapping[int, Weight], t: str = "t"):
        for table in (black, white):
            for deg in table:
                if deg < 2:
                    raise ValueError("inner faces of degree below 2 are not allowed")
        object.__setattr__(self, "black", tuple(sorted((k, _clean(v)) for k, v in black.items())))
        object.__setattr__(self, "white", tuple(sorted((k, _clean(v)) for k, v in white.items())))
        object.__setattr__(self, "t", t)
        names = self.formal_names
        if t in names:
            raise ValueError("weight names must differ from the vertex variable")

    @classmethod
    def constellation(cls, m: int, xs: Sequence[Weight], t: str = "t") -> "HypermapWeights":
        """Black faces of degree ``m`` only, white faces of degree ``mi`` weighted ``x_i``."""
        return cls({m: 1}, {m * i: x for i, x in enumerate(xs, start=1)}, t)

    @property
    def d(self) -> int:
        return max([k for k, _ in self.black] + [2])

    @property
    def d_white(self) -> int:
        return max([k for k, _ in self.white] + [2])

    @property
    def formal_names(self) -> Tuple[str, ...]:
        seen: List[str] = []
        for _, v in self.black + self.white:
            if isinstance(v, str) and v not in seen:
                seen.append(v)
        return tuple(seen)

    def swapped(self) -> "HypermapWeights":
        return HypermapWeights(dict(self.white), dict(self.black), self.t)

    def space(self, t_order: int, formal_order: Optional[int] = None) -> SeriesSpace:
        fo = t_order if formal_order is None else formal_order
        names = self.formal_names
        return SeriesSpace((self.t,) + names, (t_order,) + (fo,) * len(names))

    def values(self, space: SeriesSpace, color: str, origin: bool = False) -> Dict[int, TruncatedSeries]:
        """Weights as series; at the origin formal weights are set to zero."""
        table = self.black if color == "black" else self.white
        out = {}
        for k, v in table:
            if isinstance(v, str):
                out[k] = space.zero() if origin else space.gen(v)
            else:
                out[k] = space.const(v)
        return out


@dataclass
class HypermapSpectralData:
    weights: HypermapWeights
    space: SeriesSpace
    V: TruncatedSeries
    a: List[TruncatedSeries]
    b: List[TruncatedSeries]

    def x_curve(self) -> Laurent:
        x = {1: self.space.one()}
        for k, ak in enumerate(self.a):
            x[-k] = x.get(-k, self.space.zero()) + ak
        return x

    def y_curve(self) -> Laurent:
        y = {-1: self.V}
        for k, bk in enumerate(self.b):
            y[k] = bk
        return y


# -- Laurent polynomials with series coefficients ---------------------------------

def _lp_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Laurent = {}
    for i, u in p.items():
        if u.is_zero():
            continue
        for j, v in q.items():
            if v.is_zero():
                continue
            k = i + j
            out[k] = out[k] + u * v if k in out else u * v
    return out


def _lp_powers(p: Laurent, n: int, one: TruncatedSeries) -> List[Laurent]:
    pw = [{0: one}]
    for _ in range(n):
        pw.append(_lp_mul(pw[-1], p))
    return pw


def _get(p: Laurent, k: int, zero: TruncatedSeries) -> TruncatedSeries:
    return p.get(k, zero)


def _combine(weights: Mapping[int, TruncatedSeries], powers: List[Laurent], zero) -> Laurent:
    """``sum_i w_i p^(i-1)``."""
    out: Laurent = {}
    for i, wi in weights.items():
        if wi.is_zero():
            continue
        for k, c in powers[i - 1].items():
            term = wi * c
            out[k] = out[k] + term if k in out else term
    return out


# -- the fixed-point map ------------------------------------------------------------

def _G(U: Sequence[TruncatedSeries], t: TruncatedSeries, tb, tw, d: int, dw: int,
       space: SeriesSpace) -> List[TruncatedSeries]:
    """One application of the defining map; ``U = (V, a_0.., b_0..)``.

    Condition 1 (black, at z = oo): the polynomial part z^0..z^(d-1) of
    ``y - sum t_i x^(i-1)`` vanishes, which pins ``b_j``; its z^-1
    coefficient equals ``t``, which pins ``V``.
    Condition 2 (white, at z = 0): the coefficients z^0..z^-(d~-1) of
    ``x - sum t~_i y^(i-1)`` vanish, which pins ``a_j``.
    """
    zero, one = space.zero(), space.one()
    V, a, b = U[0], U[1:1 + dw], U[1 + dw:]
    x = {1: one}
    for k, ak in enumerate(a):
        x[-k] = x[-k] + ak if -k in x else ak
    y = {-1: V}
    for k, bk in enumerate(b):
        y[k] = y[k] + bk if k in y else bk
    xs = _combine(tb, _lp_powers(x, d - 1, one), zero)
    ys = _combine(tw, _lp_powers(y, dw - 1, one), zero)
    out = [t + _get(xs, -1, zero)]
    out += [_get(ys, -j, zero) for j in range(dw)]
    out += [_get(xs, j, zero) for j in range(d)]
    return out


def _origin(weights: HypermapWeights, space: SeriesSpace) -> List[TruncatedSeries]:
    """Exact solution at t = 0 with formal weights set to 0: only b_j = t_(j+1) survive."""
    d, dw = weights.d, weights.d_white
    tb = weights.values(space, "black", origin=True)
    U = [space.zero()] * (1 + dw)
    U += [tb.get(j + 1, space.zero()) for j in range(d)]
    return U


def _solve_linear(M: List[List[Fraction]]) -> List[List[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("the linearized system is singular at the origin")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [u - f * v for u, v in zip(A[r], A[col])]
    return [row[n:] for row in A]


def origin_jacobian(weights: HypermapWeights) -> List[List[Fraction]]:
    """Jacobian of the defining map at the origin (t = 0, formal weights 0)."""
    eps_space = SeriesSpace(("eps",), (2,))
    d, dw = weights.d, weights.d_white
    tb = weights.values(eps_space, "black", origin=True)
    tw = weights.values(eps_space, "white", origin=True)
    U0 = _origin(weights, eps_space)
    n = len(U0)
    eps = eps_space.gen("eps")
    J = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        U = list(U0)
        U[j] = U[j] + eps
        G = _G(U, eps_space.zero(), tb, tw, d, dw, eps_space)
        for i in range(n):
            J[i][j] = G[i].coeff((1,))
    return J


def solve_spectral(weights: HypermapWeights, t_order: int,
                   formal_order: Optional[int] = None) -> HypermapSpectralData:
    """Solve ``V, a_k, b_k`` modulo ``t**t_order`` (and formal weights modulo ``formal_order``).

    Chord iteration ``U <- U + (I - J0)^-1 (G(U) - U)`` started at the
    origin solution; each step gains at least one degree.
    """
    if t_order < 1:
        raise ValueError("t_order must be positive")
    space = weights.space(t_order, formal_order)
    d, dw = weights.d, weights.d_white
    t = space.gen(weights.t)
    tb = weights.values(space, "black")
    tw = weights.values(space, "white")
    J0 = origin_jacobian(weights)
    n = len(J0)
    M = _solve_linear([[int(i == j) - J0[i][j] for j in range(n)] for i in range(n)])
    U = _origin(weights, space)
    limit = sum(o for o in space.orders if o is not None) + 3
    for _ in range(limit):
        G = _G(U, t, tb, tw, d, dw, space)
        D = [g - u for g, u in zip(G, U)]
        if all(x.is_zero() for x in D):
            return HypermapSpectralData(weights, space, U[0], U[1:1 + dw], U[1 + dw:])
        new = []
        for i in range(n):
            acc = U[i]
            for j in range(n):
                if M[i][j] and not D[j].is_zero():
                    acc = acc + D[j] * M[i][j]
            new.append(acc)
        U = new
    raise ConvergenceError("spectral conditions did not stabilize")


def condition_residuals(data: HypermapSpectralData) -> Dict[str, TruncatedSeries]:
    """Every coefficient constrained by the two conditions, minus its target."""
    space, w = data.space, data.weights
    zero, one = space.zero(), space.one()
    t = space.gen(w.t)
    x, y = data.x_curve(), data.y_curve()
    tb, tw = w.values(space, "black"), w.values(space, "white")
    P = _combine(tb, _lp_powers(x, w.d - 1, one), zero)
    Q = _combine(tw, _lp_powers(y, w.d_white - 1, one), zero)
    first = {k: _get(y, k, zero) - _get(P, k, zero) for k in set(y) | set(P)}
    second = {k: _get(x, k, zero) - _get(Q, k, zero) for k in set(x) | set(Q)}
    out = {}
    for k in sorted(first):
        if k >= 0:
            out[f"black z^{k}"] = first[k]
    out["black z^-1"] = _get(first, -1, zero) - t
    for k in sorted(second):
        if k <= 0:
            out[f"white z^{k}"] = second[k]
    out["white z^1"] = data.V * _get(second, 1, zero) - t
    return out


def monochromatic_series(data: HypermapSpectralData, color: str, p_max: int) -> List[TruncatedSeries]:
    """``[W_0, ..., W_p_max]`` for a black or white monochromatic boundary."""
    if color not in ("black", "white"):
        raise ValueError("color must be 'black' or 'white'")
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    space, w = data.space, data.weights
    zero, one = space.zero(), space.one()
    x, y = data.x_curve(), data.y_curve()
    ws = space.with_var("zeta", p_max + 2)
    zeta = ws.gen("zeta")
    if color == "black":
        # sum W_p x^-(p+1) = y - sum t_i x^(i-1), a polynomial in zeta = 1/z
        P = _combine(w.values(space, "black"), _lp_powers(x, w.d - 1, one), zero)
        body = ws.zero()
        for k, c in _sub(y, P, zero).items():
            if k >= 0:
                if not c.is_zero():
                    raise ConvergenceError(f"black condition violated at z^{k}")
                continue
            body = body + ws.lift(c) * zeta ** (-k)
        # 1/x(z) = zeta / (1 + sum a_k zeta^(k+1))
        den = ws.one()
        for k, ak in enumerate(data.a):
            den = den + ws.lift(ak) * zeta ** (k + 1)
        xi = zeta / den
    else:
        # z = V u; sum W~_p y^-(p+1) = x - sum t~_i y^(i-1), a polynomial in u
        Q = _combine(w.values(space, "white"), _lp_powers(y, w.d_white - 1, one), zero)
        body = ws.zero()
        V = ws.lift(data.V)
        for k, c in _sub(x, Q, zero).items():
            if k <= 0:
                if not c.is_zero():
                    raise ConvergenceError(f"white condition violated at z^{k}")
                continue
            body = body + ws.lift(c) * V ** k * zeta ** k
        den = ws.one()
        for k, bk in enumerate(data.b):
            den = den + ws.lift(bk) * V ** k * zeta ** (k + 1)
        xi = zeta / den
    inv = revert(xi, "zeta")
    G = compose(body, {"zeta": inv})
    return [G.part("zeta", p + 1) for p in range(p_max + 1)]


def _sub(p: Laurent, q: Laurent, zero) -> Laurent:
    return {k: _get(p, k, zero) - _get(q, k, zero) for k in set(p) | set(q)}


def monochromatic_W(data: HypermapSpectralData, color: str, p: int) -> TruncatedSeries:
    return monochromatic_series(data, color, p)[p]


def constellation_pattern(data: HypermapSpectralData, m: int) -> Dict[str, TruncatedSeries]:
    """Coefficients that must vanish (or equal 1) under constellation weights."""
    out = {}
    for k, ak in enumerate(data.a):
        if (k + 1) % m:
            out[f"a_{k}"] = ak
    for k, bk in enumerate(data.b):
        if (k + 1) % m:
            out[f"b_{k}"] = bk
        elif k == m - 1:
            out[f"b_{k} - 1"] = bk - 1
    return out
