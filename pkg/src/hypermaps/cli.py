"""Command-line front end.

Exit status: 0 on success, 1 when a verification identity fails (the first
offending coefficient index is reported), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import constellation as cst
from . import eulerian as eul
from . import maps
from . import peeling
from . import spectral
from .series import TruncatedSeries
from .tables import CoefficientTable

COMMANDS = ("solve", "alternating", "monochromatic", "peel", "oracle", "eulerian", "verify")
FORMATS = ("json", "csv", "text")
OUTPUT_DIR_ENV = "HYPERMAPS_OUTPUT_DIR"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    m: int = 3
    d: int = 1
    weights: str = ""
    t_order: int = 8
    options: Dict[str, Any] = field(default_factory=dict)
    fmt: str = "json"
    output: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.m < 2:
            raise UsageError("--m must be at least 2")
        if self.d < 1:
            raise UsageError("--d must be at least 1")
        if self.t_order < 1:
            raise UsageError("--t-order must be at least 1")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")

    def parameters(self) -> Dict[str, Any]:
        out = {"m": self.m, "d": self.d, "weights": self.weights or "default", "t_order": self.t_order}
        out.update(self.options)
        return out

    def params(self) -> cst.ConstellationParams:
        return parse_weights(self.weights, self.m, self.d)


def parse_weights(text: str, m: int, d: int) -> cst.ConstellationParams:
    """``"formal"``, a comma list of ``d`` rationals, or empty for the default.

    The default is ``x_1 = 1`` and ``x_i = 0`` otherwise, except for ``m = 2``
    where that choice is degenerate and formal weights are used instead.
    """
    text = text.strip()
    if text == "formal" or (not text and m == 2):
        return cst.ConstellationParams.formal(m, d)
    if not text:
        return cst.ConstellationParams(m, (1,) + (0,) * (d - 1))
    try:
        values = tuple(Fraction(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --weights {text!r}") from exc
    if len(values) != d:
        raise UsageError(f"--weights lists {len(values)} values but --d is {d}")
    return cst.ConstellationParams(m, values)


def _meta(cfg: RunConfig, module: str, anchor: str, **extra) -> Dict[str, Any]:
    meta = {"command": cfg.command, "parameters": cfg.parameters(), "module": module, "anchor": anchor}
    meta.update(extra)
    return meta


def _sorted_series(table: CoefficientTable, label: Sequence, s: TruncatedSeries) -> None:
    for e, c in sorted(s.items()):
        table.add(tuple(label) + e, c)


# -- commands ------------------------------------------------------------------------------

def cmd_solve(cfg: RunConfig) -> Tuple[CoefficientTable, int]:
    P = cfg.params()
    data = cst.solve(P, cfg.t_order + 1)
    tab = CoefficientTable(_meta(cfg, "constellation", "constellation spectral curve: V and alpha_k",
                                 variables=list(data.space.variables)))
    _sorted_series(tab, ["V"], data.V)
    for k, a in enumerate(data.alphas, start=1):
        _sorted_series(tab, ["alpha", k], a)
    return tab, 0


def cmd_alternating(cfg: RunConfig) -> Tuple[CoefficientTable, int]:
    P = cfg.params()
    r_max = cfg.options["r_max"]
    res = cst.alternating_A(P, cfg.t_order + 1, r_max)
    tab = CoefficientTable(_meta(cfg, "constellation", "alternating boundary series A(w) by reversion",
                                 poly_variables=list(cst.ring_variables(P.d)),
                                 series_variables=list(res.data.space.variables)))
    for r, poly in enumerate(res.polys):
        _sorted_series(tab, ["poly", r], poly)
    for r, s in enumerate(res.series):
        _sorted_series(tab, ["series", r], s)
    return tab, 0


def cmd_monochromatic(cfg: RunConfig) -> Tuple[CoefficientTable, int]:
    P = cfg.params()
    color, p_max = cfg.options["color"], cfg.options["p_max"]
    w8 = spectral.HypermapWeights.constellation(P.m, P.weights)
    sd = spectral.solve_spectral(w8, cfg.t_order + 1)
    W = spectral.monochromatic_series(sd, color, p_max)
    tab = CoefficientTable(_meta(cfg, "spectral_hypermap", f"monochromatic {color} boundary W_p",
                                 variables=list(sd.space.variables)))
    for p, Wp in enumerate(W):
        _sorted_series(tab, ["W", p], Wp)
    status = 0
    if color == "white":
        data = cst.solve(P, cfg.t_order + 1)
        for p in range(0, p_max + 1, P.m):
            diff = W[p] - cst.monochrom_F_white(data, p // P.m)
            if not diff.is_zero():
                _fail(f"white W_{p} vs closed form", diff)
                status = 1
                break
    return tab, status


def cmd_peel(cfg: RunConfig) -> Tuple[CoefficientTable, int]:
    P = cfg.params()
    r_max, p_max = cfg.options["r_max"], cfg.options["p_max"]
    w8 = spectral.HypermapWeights.constellation(P.m, P.weights)
    table = peeling.peel(w8, cfg.t_order + 1, r_max, p_max)
    tab = CoefficientTable(_meta(cfg, "peeling", "peeling recursion for a mixed boundary M[p, r]",
                                 variables=list(table.space.variables)))
    for (p, r), v in table.reported():
        _sorted_series(tab, ["M", p, r], v)
    status = 0
    for name, residual in _peel_checks(P, table, cfg.t_order + 1):
        if not residual.is_zero():
            _fail(name, residual)
            status = 1
            break
    return tab, status


def _peel_checks(P: cst.ConstellationParams, table: peeling.MixedBoundaryTable, t_order: int):
    res = cst.alternating_A(P, t_order, table.r_max)
    for r in range(table.r_max + 1):
        yield f"peeling A_{r} vs reversion", table.A(r) - res.series[r].embed(table.space.variables,
                                                                                 table.space.orders)
    bad = peeling.divisibility_violations(table, P.m)
    if bad:
        yield f"divisibility M{list(bad[0])}", table.entries[bad[0]]
    yield "peeling functional equation", peeling.functional_equation_residual(table)


def _oracle_constraint(family: str, m: int) -> maps.FaceConstraint:
    if family == "constellation":
        return maps.FaceConstraint.constellation(m)
    if family == "eulerian":
        return maps.FaceConstraint.eulerian_triangulation()
    return maps.FaceConstraint.any_degree()


def cmd_oracle(cfg: RunConfig) -> Tuple[CoefficientTable, int]:
    o = cfg.options
    boundary = maps.BoundaryWord(o["boundary"])
    counts = maps.enumerate_maps(boundary, _oracle_constraint(o["family"], cfg.m), o["max_edges"],
                                 o["semi_simple"])
    tab = CoefficientTable(_meta(cfg, "map_oracle", "gluing enumeration of rooted planar maps",
                                 index=["vertices", "black face degrees", "white face degrees"]))
    for (v, black, white), c in sorted(counts.items()):
        tab.add([v, ",".join(map(str, black)) or "-", ",".join(map(str, white)) or "-"], c)
    return tab, 0


def cmd_eulerian(cfg: RunConfig):
    o = cfg.options
    if o["asymptotics"]:
        return _asymptotics(cfg), 0
    n, zo = cfg.t_order + 1, o["z_order"] + 1
    route = o["route"]
    if route == "closed":
        B = eul.compute_B(n, zo)
    elif route == "substitution":
        B = eul.compute_B_substitution(eul.compute_T(n, zo))
    else:
        B = eul.solve_quartic(n, zo)
    tab = CoefficientTable(_meta(cfg, "eulerian", f"semi-simple boundary series B(t, z), {route} route",
                                 index=["n", "p"]))
    for e, c in sorted(B.items()):
        tab.add(e, c)
    return tab, 0


def _asymptotics(cfg: RunConfig) -> str:
    o = cfg.options
    n_points = (o["n_max"] // 4, o["n_max"] // 2, o["n_max"])
    p_points = (o["p_max"] // 2, 3 * o["p_max"] // 4, o["p_max"])
    rep = eul.asymptotic_ratios(o["n_max"], o["p_max"], Fraction(o["z"]), n_points, p_points)
    rows = []
    for tab in (rep.B_ratio, rep.C_ratio, rep.Z_ratio):
        for k, v in tab.points:
            rows.append((tab.name, k, f"{float(v):.12f}"))
    if cfg.fmt == "json":
        return json.dumps({"meta": _meta(cfg, "eulerian", "asymptotic ratios at t = 1/8",
                                         precision_digits=rep.precision_digits, Z0=str(rep.Z0)),
                           "rows": [{"index": [name, k], "ratio": v} for name, k, v in rows]},
                          sort_keys=True, indent=2) + "\n"
    if cfg.fmt == "csv":
        return "series,index,ratio\n" + "".join(f"{a},{b},{c}\n" for a, b, c in rows)
    lines = [f"# asymptotic ratios, z = {rep.z}, computed with {rep.precision_digits} digits",
             f"# Z(0) = {rep.Z0}"]
    lines += [f"{a}\t{b}\t{c}" for a, b, c in rows]
    return "\n".join(lines) + "\n"


# -- verify ----------------------------------------------------------------------------------

Check = Tuple[str, Callable[[], TruncatedSeries]]


def verification_checks(P: cst.ConstellationParams, t_order: int) -> List[Check]:
    """Named zero-residual identities; each thunk returns a series that must vanish."""
    N = t_order + 1
    m, d = P.m, P.d
    checks: List[Check] = []
    data = cst.solve(P, N)
    w8 = spectral.HypermapWeights.constellation(m, P.weights)
    sd = spectral.solve_spectral(w8, N)

    for name, r in spectral.condition_residuals(sd).items():
        checks.append((f"spectral condition {name}", lambda r=r: r))
    for name, r in spectral.constellation_pattern(sd, m).items():
        checks.append((f"constellation pattern {name}", lambda r=r: r))
    checks.append(("V from both solvers", lambda: sd.V - data.V))

    def white_W():
        W = spectral.monochromatic_series(sd, "white", 2 * m)
        out = sd.space.zero()
        for p, Wp in enumerate(W):
            out = out + (Wp - cst.monochrom_F_white(data, p // m) if p % m == 0 else Wp)
        return out
    checks.append(("white boundary W_p vs closed form", white_W))

    res = cst.alternating_A(P, N, 3)
    checks.append(("A_0 = t", lambda: res.series[0] - data.space.gen(P.t)))
    if d >= 2 or P.formal_names:
        checks.append(("A_1 polynomial closed form",
                       lambda: res.polys[1] - cst.A1_closed_form(m, d)))
    rc = cst.rooted_consistency(data, res.series[1])
    checks.append(("rooted series: integral vs closed form", lambda: rc.C_integral - rc.C_noint))
    checks.append(("rooted series: closed form vs A_1", lambda: rc.C_noint - rc.C_from_A1))
    checks.append(("integral identity for V d(alpha_1)", lambda: rc.lhs - rc.rhs))
    if m == 2:
        checks.append(("bipartite identity", lambda: cst.bipartite_check(res.polys, d)))

    table = peeling.peel(w8, N, 3, m)
    for name, r in _peel_checks(P, table, N):
        checks.append((name, lambda r=r: r))

    def kernel(name):
        def thunk():
            rep = cst.kernel_identities_check(P, t_order, t_order)
            return rep.residuals[name]
        return thunk
    for name in ("omega", "A(omega)", "K", "R", "R_simplified", "series_in_x^-m",
                 "omega(x(z))", "A(omega(x(z)))", "A_0"):
        checks.append((f"kernel identity {name}", kernel(name)))

    zo = min(t_order, 6) + 1
    B = eul.compute_B(N, zo)
    checks.append(("B: substitution route", lambda: eul.compute_B_substitution(eul.compute_T(N, zo)) - B))
    checks.append(("B: quartic root", lambda: eul.solve_quartic(N, zo) - B))
    checks.append(("B: quartic residual", lambda: eul.quartic_residual(B).residual))
    checks.append(("T: parametrization route", lambda: eul.compute_T_param(N, zo) - eul.compute_T(N, zo)))
    checks.append(("Z(p) vs B(1/8, z)", lambda: eul.compute_Z(2 * N) - eul.B_at_critical(2 * N)))

    def oracle(semi_simple: bool):
        def thunk():
            n_max = min(t_order, 2)
            series = B if semi_simple else eul.compute_T(N, zo)
            coeffs = {}
            for n in range(n_max + 1):
                for r in range(3):
                    coeffs[(n, r)] = (series.coeff((n, r))
                                      - maps.eulerian_triangulation_count(n, r, semi_simple))
            return TruncatedSeries(("t", "u"), (n_max + 1, 3), coeffs)
        return thunk
    checks.append(("oracle: Eulerian triangulations", oracle(False)))
    checks.append(("oracle: semi-simple boundary", oracle(True)))
    return checks


def _first_index(s: TruncatedSeries) -> Optional[Dict[str, int]]:
    for e, _ in sorted(s.items()):
        return dict(zip(s.variables, e))
    return None


def _fail(name: str, residual: TruncatedSeries) -> None:
    print(f"FAIL {name}: first offending coefficient {_first_index(residual)}", file=sys.stderr)


def cmd_verify(cfg: RunConfig):
    P = cfg.params()
    results = []
    status = 0
    cache: Dict[str, Any] = {}
    for name, thunk in verification_checks(P, cfg.t_order):
        residual = thunk()
        first = _first_index(residual)
        results.append({"name": name, "status": "PASS" if first is None else "FAIL",
                        "first_index": first})
        if first is not None:
            status = 1
            if "first_failure" not in cache:
                cache["first_failure"] = (name, first)
    meta = _meta(cfg, "cli", "cross-module identity suite")
    if cfg.fmt == "json":
        text = json.dumps({"meta": meta, "checks": results}, sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = "name,status,first_index\n" + "".join(
            f"\"{r['name']}\",{r['status']},\"{r['first_index'] or ''}\"\n" for r in results)
    else:
        text = "".join(f"{r['status']} {r['name']}" + (f" at {r['first_index']}" if r["first_index"] else "")
                       + "\n" for r in results)
    if status:
        name, first = cache["first_failure"]
        print(f"FAIL {name}: first offending coefficient {first}", file=sys.stderr)
    return text, status


HANDLERS = {
    "solve": cmd_solve,
    "alternating": cmd_alternating,
    "monochromatic": cmd_monochromatic,
    "peel": cmd_peel,
    "oracle": cmd_oracle,
    "eulerian": cmd_eulerian,
    "verify": cmd_verify,
}

_EXT = {"json": "json", "csv": "csv", "text": "txt"}


def output_path(cfg: RunConfig) -> Optional[str]:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if cfg.output:
        if base and not os.path.isabs(cfg.output):
            return os.path.join(base, cfg.output)
        return cfg.output
    if base:
        return os.path.join(base, f"{cfg.command}.{_EXT[cfg.fmt]}")
    return None


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the exit status."""
    try:
        out, status = HANDLERS[cfg.command](cfg)
    except (UsageError, maps.OracleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = out if isinstance(out, str) else out.render(cfg.fmt)
    path = output_path(cfg)
    if path:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=3, help="black face degree (m >= 2)")
    common.add_argument("--d", type=int, default=1, help="largest white face degree, in units of m")
    common.add_argument("--weights", default="", help='"formal" or d comma-separated rationals')
    common.add_argument("--t-order", type=int, default=8, help="highest power of t kept")
    common.add_argument("--format", choices=FORMATS, default="json", dest="fmt")
    common.add_argument("--output", default=None, help=f"output file (relative to ${OUTPUT_DIR_ENV} if set)")

    parser = argparse.ArgumentParser(prog="hypermaps", description="Exact generating functions of planar hypermaps.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve V and alpha_k")
    p = sub.add_parser("alternating", parents=[common], help="A_r for an alternating boundary")
    p.add_argument("--r-max", type=int, default=2)
    p = sub.add_parser("monochromatic", parents=[common], help="W_p for a monochromatic boundary")
    p.add_argument("--p-max", type=int, default=6)
    p.add_argument("--color", choices=("black", "white"), default="white")
    p = sub.add_parser("peel", parents=[common], help="peeling recursion for a mixed boundary")
    p.add_argument("--r-max", type=int, default=3)
    p.add_argument("--p-max", type=int, default=0)
    p = sub.add_parser("oracle", parents=[common], help="brute-force map enumeration")
    p.add_argument("--max-edges", type=int, default=4)
    p.add_argument("--family", choices=("constellation", "eulerian", "plain"), default="constellation")
    p.add_argument("--boundary", default="wbwb", help="boundary word over {w, b}")
    p.add_argument("--semi-simple", action="store_true")
    p = sub.add_parser("eulerian", parents=[common], help="Eulerian triangulation series B(t, z)")
    p.add_argument("--z-order", type=int, default=5)
    p.add_argument("--route", choices=("closed", "substitution", "quartic"), default="closed")
    p.add_argument("--asymptotics", action="store_true", help="ratio table at t = 1/8 instead")
    p.add_argument("--n-max", type=int, default=500)
    p.add_argument("--p-max", type=int, default=200)
    p.add_argument("--z", default="1/8")
    sub.add_parser("verify", parents=[common], help="run the identity suite")
    return parser


_OPTION_KEYS = ("r_max", "p_max", "color", "max_edges", "family", "boundary", "semi_simple",
                "z_order", "route", "asymptotics", "n_max", "z")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    opts = {k: getattr(ns, k) for k in _OPTION_KEYS if hasattr(ns, k)}
    for k in ("r_max", "p_max", "z_order", "n_max"):
        if k in opts and opts[k] < 0:
            raise UsageError(f"--{k.replace('_', '-')} must be nonnegative")
    return RunConfig(ns.command, ns.m, ns.d, ns.weights, ns.t_order, opts, ns.fmt, ns.output)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
