"""Peeling recursion for hypermaps with a mixed boundary.

``M[p, r]`` counts hypermaps whose boundary reads ``p`` black letters followed
by ``r`` alternating pairs.  Peeling the first white edge of the
alternating part gives

    M[p, r] = sum_i t_i M[p+i, r-1] + sum_{p'<=p} W_p' M[p-p', r-1]
              + sum_{r'<=r-2} A_r' M[p, r-r'-1],

with ``M[p, 0] = W_p`` and ``A_r = M[0, r]``.  Row ``r`` needs row ``r-1`` up
to ``p + d``, so row ``r`` is computed for ``p <= p_max + (r_max - r) d``; every
reported entry is therefore exact within the truncation window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .series import SeriesSpace, TruncatedSeries
from .spectral import HypermapWeights, monochromatic_series, solve_spectral


@dataclass
class MixedBoundaryTable:
    weights: HypermapWeights
    space: SeriesSpace
    entries: Dict[Tuple[int, int], TruncatedSeries]
    W: List[TruncatedSeries]
    p_max: int
    r_max: int

    def __getitem__(self, key: Tuple[int, int]) -> TruncatedSeries:
        return self.entries[key]

    def A(self, r: int) -> TruncatedSeries:
        return self.entries[(0, r)]

    def reported(self):
        """Entries with ``p <= p_max`` and ``r <= r_max``, in index order."""
        for (p, r) in sorted(self.entries, key=lambda k: (k[1], k[0])):
            if p <= self.p_max:
                yield (p, r), self.entries[(p, r)]


def required_W(weights: HypermapWeights, p_max: int, r_max: int) -> int:
    """Largest ``p`` for which ``W_p`` enters the computation."""
    return p_max + r_max * weights.d


def peel_recursion(weights: HypermapWeights, W: Sequence[TruncatedSeries],
                   r_max: int, p_max: int) -> MixedBoundaryTable:
    """All ``M[p, r]`` in the dependency cone of ``p <= p_max, r <= r_max``."""
    d = weights.d
    need = required_W(weights, p_max, r_max)
    if len(W) <= need:
        raise ValueError(f"W_p is needed up to p = {need}, got {len(W) - 1}")
    space = SeriesSpace(W[0].variables, W[0].orders)
    tb = weights.values(space, "black")
    M: Dict[Tuple[int, int], TruncatedSeries] = {}
    for p in range(need + 1):
        M[(p, 0)] = W[p]
    A = [W[0]]
    for r in range(1, r_max + 1):
        top = p_max + (r_max - r) * d
        for p in range(top + 1):
            acc = space.zero()
            for i, ti in tb.items():
                acc = acc + ti * M[(p + i, r - 1)]
            for q in range(p + 1):
                acc = acc + W[q] * M[(p - q, r - 1)]
            for rr in range(r - 1):
                acc = acc + A[rr] * M[(p, r - rr - 1)]
            M[(p, r)] = acc
        A.append(M[(0, r)])
    return MixedBoundaryTable(weights, space, M, list(W), p_max, r_max)


def peel(weights: HypermapWeights, t_order: int, r_max: int, p_max: int = 0,
         formal_order: Optional[int] = None) -> MixedBoundaryTable:
    """Solve the spectral curve, extract ``W_p`` and run the recursion."""
    data = solve_spectral(weights, t_order, formal_order)
    W = monochromatic_series(data, "black", required_W(weights, p_max, r_max))
    return peel_recursion(weights, W, r_max, p_max)


def divisibility_violations(table: MixedBoundaryTable, m: int) -> List[Tuple[int, int]]:
    """Computed entries with ``m`` not dividing ``p`` that fail to vanish."""
    return [k for k, v in sorted(table.entries.items()) if k[0] % m and not v.is_zero()]


def functional_equation_residual(table: MixedBoundaryTable) -> TruncatedSeries:
    """``xi^d (K M - R)`` as a series in ``xi = 1/x``, ``w`` and the weights.

    ``M(x, w) = sum_{p>=0, r>=1} M[p, r] w^r x^-(p+1)``,
    ``K = 1 - A(w) - w x Y(x)``, ``R = w x W(x) Y(x) - w sum_i t_i [x^i (M + W)]_{x>=0}``
    with ``Y(x) = sum t_i x^(i-1) + W(x)``.  Multiplying by ``xi^d`` makes
    every term a power series; the result vanishes in the window
    ``xi^0..xi^(p_max+d)``, ``w^0..w^r_max``.
    """
    w8, base = table.weights, table.space
    d, r_max = w8.d, table.r_max
    xi_order = table.p_max + d + 1
    space = SeriesSpace(("xi", "w") + base.variables, (xi_order, r_max + 1) + base.orders)
    xi, w = space.gen("xi"), space.gen("w")
    tb = {i: space.lift(v) for i, v in w8.values(base, "black").items()}

    def lift(s):
        return space.lift(s)

    W = table.W
    Wb = space.zero()  # x W(x) = sum W_p xi^p
    for p in range(min(len(W), xi_order)):
        Wb = Wb + lift(W[p]) * xi ** p
    Mxi = space.zero()  # x M(x, w) = sum M[p, r] w^r xi^p
    N: Dict[int, TruncatedSeries] = {}  # coefficient of xi^(p+1) in M + W
    for (p, r), v in table.entries.items():
        if r >= 1 and p < xi_order:
            Mxi = Mxi + lift(v) * w ** r * xi ** p
        if p < d:
            N[p] = N.get(p, space.zero()) + lift(v) * w ** r
    A = space.zero()
    for r in range(r_max + 1):
        A = A + lift(table.entries[(0, r)]) * w ** (r + 1)
    # xi^d x Y(x) = sum t_i xi^(d-i) + xi^d Wb ;  xi^d M = xi^(d+1) Mxi
    xY = Wb * xi ** d
    for i, ti in tb.items():
        xY = xY + ti * xi ** (d - i)
    lhs = ((1 - A) * xi ** d - w * xY) * Mxi * xi
    # xi^d w x W Y = w Wb * (xi^d x Y) * xi^0, since x W Y = Wb * Y and Y = xi (x Y)
    rhs = w * Wb * xY * xi
    proj = space.zero()
    for i, ti in tb.items():
        for p in range(i):
            if p in N:
                proj = proj + ti * N[p] * xi ** (d - i + 1 + p)
    rhs = rhs - w * proj
    return lhs - rhs
