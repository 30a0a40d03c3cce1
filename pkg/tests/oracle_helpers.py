"""Comparisons between brute-force counts and generating-function coefficients."""

from collections import Counter
from fractions import Fraction
from typing import Dict, List, Tuple

from hypermaps import constellation as cst
from hypermaps import eulerian as eul
from hypermaps import maps
from hypermaps.peeling import MixedBoundaryTable


def eulerian_T_mismatches(n_max: int, r_max: int) -> List[Tuple[int, int, int, Fraction]]:
    T = eul.compute_T(n_max + 1, r_max + 1)
    bad = []
    for n in range(n_max + 1):
        for r in range(r_max + 1):
            count = maps.eulerian_triangulation_count(n, r)
            if T.coeff((n, r)) != count:
                bad.append((n, r, count, T.coeff((n, r))))
    return bad


def semi_simple_B_mismatches(n_max: int, p_max: int) -> List[Tuple[int, int, int, Fraction]]:
    B = eul.compute_B(n_max + 1, p_max + 1)
    bad = []
    for n in range(n_max + 1):
        for p in range(p_max + 1):
            count = maps.eulerian_triangulation_count(n, p, semi_simple=True)
            if B.coeff((n, p)) != count:
                bad.append((n, p, count, B.coeff((n, p))))
    return bad


def mixed_eulerian_mismatches(table: MixedBoundaryTable, max_edges: int = 6):
    """``M[p, r]`` (Eulerian triangulations, ``t`` per vertex) against enumeration.

    A triangulation with ``k`` inner faces and boundary length ``L`` has
    ``E = (L + 3k)/2`` edges and ``v = 1 + (L + k)/2`` vertices, so every ``v``
    with ``E <= max_edges`` is counted completely.
    """
    bad = []
    for (p, r), series in table.reported():
        L = p + 2 * r
        if L == 0:
            continue  # the vertex map has no boundary to glue
        counts = maps.enumerate_maps(maps.BoundaryWord.mixed(p, r),
                                     maps.FaceConstraint.eulerian_triangulation(), max_edges)
        by_v: Counter = Counter()
        for (v, _, _), c in counts.items():
            by_v[v] += c
        for v in range(series.order("t")):
            k = 2 * v - 2 - L
            if k < 0 or (L + 3 * k) // 2 > max_edges or (L + k) % 2:
                continue
            if series.coeff((v,)) != by_v[v]:
                bad.append(((p, r), v, by_v[v], series.coeff((v,))))
    return bad


def bipartite_mismatches(r_max: int, d: int, max_edges: int):
    """m = 2, formal ``x_i``: ``[t^v x^n] A_r`` against enumeration with ``E <= max_edges``.

    Here ``E = r + 2 sum i n_i`` and ``v = 1 + r + sum (i-1) n_i``.
    """
    params = cst.ConstellationParams.formal(2, d)
    res = cst.alternating_A(params, max_edges + 2, r_max, x_order=max_edges + 1)
    constraint = maps.FaceConstraint.constellation(2, max_white=2 * d)
    bad = []
    checked = 0
    for r in range(r_max + 1):
        counts = maps.enumerate_maps(maps.BoundaryWord.alternating(r), constraint, max_edges)
        expected: Dict[Tuple[int, ...], int] = Counter()
        for (v, _, white), c in counts.items():
            profile = [0] * d
            for deg in white:
                profile[deg // 2 - 1] += 1
            expected[(v,) + tuple(profile)] += c
        keys = set(expected) | {e for e, _ in res.series[r].items()}
        for key in sorted(keys):
            E = r + 2 * sum(i * n for i, n in enumerate(key[1:], start=1))
            if E > max_edges or r == 0:
                continue
            checked += 1
            got = res.series[r].coeff(key)
            if got != expected.get(key, 0):
                bad.append((r, key, expected.get(key, 0), got))
    return bad, checked
