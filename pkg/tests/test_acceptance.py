"""Acceptance gate: one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hypermaps import constellation as cst  # noqa: E402
from hypermaps import eulerian as eul  # noqa: E402
from hypermaps import maps  # noqa: E402
from hypermaps.peeling import divisibility_violations, peel  # noqa: E402
from hypermaps.spectral import (  # noqa: E402
    HypermapWeights, condition_residuals, constellation_pattern, monochromatic_series, solve_spectral,
)

from oracle_helpers import bipartite_mismatches, eulerian_T_mismatches, semi_simple_B_mismatches  # noqa: E402
from reference_values import REFERENCE_B  # noqa: E402

Outcome = Tuple[bool, str]
RESULTS: Dict[int, Tuple[bool, str, float]] = {}


def _nonzero(residuals) -> List[str]:
    return [k for k, v in residuals.items() if not v.is_zero()]


# -- criteria ------------------------------------------------------------------------

def criterion_1() -> Outcome:
    """A_1, A_2 for m = 2..5, d = 1 against the reference expansion, term for term, under 1 s."""
    start = time.perf_counter()
    diffs = []
    for m in (2, 3, 4, 5):
        polys = cst.alternating_A_polys(m, 1, 2)
        reference = cst.reference_A_expansion(m)
        for r in (1, 2):
            got = cst.eulerian_specialization(polys[r], m)
            want = reference[r - 1]
            for k in sorted(set(got) | set(want)):
                if got.get(k, 0) != want.get(k, 0):
                    diffs.append(f"m={m} A_{r} V^{k}: computed {got.get(k, 0)}, reference {want.get(k, 0)}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1:
        diffs.append(f"took {elapsed:.2f}s")
    return not diffs, "; ".join(diffs[:4]) + (f" (+{len(diffs) - 4} more)" if len(diffs) > 4 else "")


def criterion_2() -> Outcome:
    """A_1 closed form for d >= 2 formal weights and the integral identity to order 12."""
    bad = []
    for m in (2, 3, 4, 5):
        for d in (2, 3):
            if cst.alternating_A_polys(m, d, 1)[1] != cst.A1_closed_form(m, d):
                bad.append(f"A_1 polynomial m={m} d={d}")
    for m in (2, 3):
        params = cst.ConstellationParams.formal(m, 2)
        res = cst.alternating_A(params, 13, 1, x_order=13)
        if res.series[1] != cst.specialize(cst.A1_closed_form(m, 2), res.data):
            bad.append(f"A_1 series m={m}")
        rc = cst.rooted_consistency(res.data, res.series[1])
        if rc.lhs != rc.rhs:
            bad.append(f"integral identity m={m}")
        if not rc.ok:
            bad.append(f"rooted series m={m}")
    return not bad, ", ".join(bad) or "m=2..5, d=2,3 polynomials; t^12, x^12 series for m=2,3"


def criterion_3() -> Outcome:
    B = eul.compute_B(6, 6)
    table = [[B.coeff((n, p)) for p in range(6)] for n in range(6)]
    if table != REFERENCE_B:
        bad = [(n, p) for n in range(6) for p in range(6) if table[n][p] != REFERENCE_B[n][p]]
        return False, f"closed form differs at {bad[:3]}"
    sub = eul.compute_B_substitution(eul.compute_T(6, 6))
    if sub != B:
        return False, "substitution route differs"
    return True, f"B_5,3 = {table[5][3]}, B_4,1 = {table[4][1]}, substitution route identical"


def criterion_4() -> Outcome:
    rep = eul.quartic_residual(eul.compute_B(11, 11))
    return rep.ok, "residual zero through t^10 z^10" if rep.ok else f"first nonzero at {rep.first_failure()}"


def criterion_5() -> Outcome:
    a = eulerian_T_mismatches(3, 2)
    b = semi_simple_B_mismatches(3, 2)
    b0 = [p for p in range(4) if maps.eulerian_triangulation_count(0, p, semi_simple=True) != 1]
    c, checked = bipartite_mismatches(3, 2, 5)
    ok = not (a or b or b0 or c) and checked > 0
    return ok, f"T mismatches {a}, B mismatches {b}, B_0,p != 1 at {b0}, m=2 mismatches {c} ({checked} coefficients)"


def criterion_6() -> Outcome:
    bad = []
    for m, xs, fo in ((3, (1,), None), (2, ("x1",), 5), (3, ("x1", "x2"), 3)):
        table = peel(HypermapWeights.constellation(m, xs), 9, 3, p_max=m + 1, formal_order=fo)
        res = cst.alternating_A(cst.ConstellationParams(m, xs), 9, 3, x_order=fo)
        for r in range(4):
            if table.A(r) != res.series[r].embed(table.space.variables, table.space.orders):
                bad.append(f"m={m} {xs} A_{r}")
        viol = divisibility_violations(table, m)
        if viol:
            bad.append(f"m={m} nonzero M{viol[0]}")
    return not bad, ", ".join(bad) or "m=2,3: M_0,r = A_r for r<=3 at t^8; no entry with m not dividing p"


def criterion_7() -> Outcome:
    rep = cst.kernel_identities_check(cst.ConstellationParams.eulerian(3), 12, 12)
    return rep.ok, f"failures {rep.failures}" if rep.failures else "K, R and all derived identities vanish to x^-12, t^12"


def criterion_8() -> Outcome:
    bad = []
    rng = random.Random(20240601)
    for trial in range(6):
        black = {k: Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for k in rng.sample(range(2, 5), 2)}
        white = {k: Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for k in rng.sample(range(2, 5), 2)}
        try:
            sd = solve_spectral(HypermapWeights(black, white), 6)
        except ZeroDivisionError:
            continue
        if _nonzero(condition_residuals(sd)):
            bad.append(f"conditions {black} {white}")
    for m, d in ((2, 2), (3, 2), (4, 1)):
        params = cst.ConstellationParams.formal(m, d)
        sd = solve_spectral(HypermapWeights.constellation(m, params.weights), 7, formal_order=4)
        data = cst.solve(params, 7, x_order=4)
        if _nonzero(constellation_pattern(sd, m)):
            bad.append(f"pattern m={m}")
        for k in range(1, d + 1):
            if sd.a[m * k - 1] != data.alphas[k - 1]:
                bad.append(f"a_{m * k - 1} != alpha_{k} (m={m})")
        W = monochromatic_series(sd, "white", 3 * m)
        for p in range(4):
            if W[m * p] != cst.monochrom_F_white(data, p):
                bad.append(f"F_{p} m={m}")
    return not bad, ", ".join(bad) or "random weights, patterns and F_p (p<=3, i<=2) agree"


def criterion_9() -> Outcome:
    rep = eul.asymptotic_ratios(500, 200, Fraction(1, 8), n_points=(250, 500), p_points=(100, 150, 200))
    b250, b500 = rep.B_ratio.deviation(250), rep.B_ratio.deviation(500)
    ok = (b500 < 0.05 and b500 < b250
          and rep.C_ratio.monotone_tail((100, 150, 200))
          and rep.Z_ratio.monotone_tail((100, 150, 200))
          and rep.Z0 == 1)
    pts = {name: [f"{float(v):.4f}" for _, v in t.points]
           for name, t in (("B", rep.B_ratio), ("C", rep.C_ratio), ("Z", rep.Z_ratio))}
    return ok, f"ratios {pts}, Z(0) = {rep.Z0}"


def profiles(m: int):
    """Profiles with sum (mi-i-1) n_i <= 6 and, for termination at m = 2, sum n_i <= 6."""
    d = 7 if m == 2 else 3
    out = []

    def rec(i, prof, cost, faces):
        if i > d:
            if faces:
                out.append(tuple(prof))
            return
        n = 0
        while cost + n * (m * i - i - 1) <= 6 and faces + n <= 6:
            rec(i + 1, prof + [n], cost + n * (m * i - i - 1), faces + n)
            n += 1
    rec(1, [], 0, 0)
    return out


def criterion_10() -> Outcome:
    bad, count = [], 0
    for m in (2, 3):
        for prof in profiles(m):
            support = max(i for i, n in enumerate(prof) if n) + 1
            weights = tuple(f"x{i + 1}" if prof[i] else 0 for i in range(support))
            params = cst.ConstellationParams(m, weights)
            v = cst.vertex_count(m, prof)
            V = cst.solve(params, v + 1, x_order=max(prof) + 1).V
            coeff = V
            for i in range(support):
                if prof[i]:
                    coeff = coeff.part(f"x{i + 1}", prof[i])
            want = Fraction(m - 1, m) * v * cst.rooted_count(m, prof)
            count += 1
            if coeff.coeff((v - 1,)) != want or coeff.nterms != 1:
                bad.append((m, prof))
    return not bad, f"{count} profiles, mismatches {bad[:3]}"


CRITERIA: Dict[int, Callable[[], Outcome]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def evaluate(k: int) -> Tuple[bool, str, float]:
    start = time.perf_counter()
    ok, detail = CRITERIA[k]()
    RESULTS[k] = (ok, detail, time.perf_counter() - start)
    return RESULTS[k]


def line(k: int) -> str:
    ok, detail, secs = RESULTS[k]
    return f"{'PASS' if ok else 'FAIL'} criterion {k} ({secs:.2f}s): {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail, _ = evaluate(k)
    print(line(k))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        evaluate(k)
        print(line(k))
        failed += not RESULTS[k][0]
    sys.exit(1 if failed else 0)
