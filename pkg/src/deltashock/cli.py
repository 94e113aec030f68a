"""Command-line interface: scenario ingestion, solving, emission of events,
front samples, field grids, atom tables and x-t wave diagrams, plus the
verification and fan-oracle subcommands.

Exit codes: 0 success, 2 invalid scenario/input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .core import FrontKind, Line, LogCurve, Scenario, Solution, SqrtCurve, State
from .evaluate import sample
from .interact import ScenarioError, run, validate_scenario
from .riemann import solve_grp
from . import verify as V

_KIND_STYLE = {
    FrontKind.SHOCK: ('stroke="#d62728" stroke-width="1.6"', "shock"),
    FrontKind.CONTACT: ('stroke="#1f77b4" stroke-width="1.4" '
                        'stroke-dasharray="7,5"', "contact"),
    FrontKind.DELTA_SHOCK: ('stroke="#000000" stroke-width="3.4"', "delta shock"),
    FrontKind.DELTA_CONTACT: ('stroke="#6a0dad" stroke-width="3.0" '
                              'stroke-dasharray="11,5"', "delta contact"),
    FrontKind.FAN_EDGE: ('stroke="#888888" stroke-width="1.0" '
                         'stroke-dasharray="2,4"', "fan edge"),
}


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


def parse_scenario(path) -> tuple[Scenario, dict]:
    """Read a scenario JSON file; returns the validated Scenario and the
    emission options (grid, window, outputs) with defaults filled in."""
    with open(path) as fh:
        raw = json.load(fh)
    try:
        states = raw["states"]
        if len(states) != 3:
            raise ScenarioError("states must hold exactly three [u, v] pairs")
        l, m, r = (State(float(u), float(v)) for (u, v) in states)
        sc = Scenario(l, m, r, float(raw["offset"]),
                      float(raw.get("t_max", 10.0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"malformed scenario file: {exc}") from exc
    validate_scenario(sc)
    grid = raw.get("grid", [201, 101])
    if len(grid) != 2 or grid[0] < 2 or grid[1] < 2:
        raise ScenarioError("grid must be [nx, nt] with nx, nt >= 2")
    opts = {
        "grid": (int(grid[0]), int(grid[1])),
        "window": tuple(raw["window"]) if "window" in raw else None,
        "outputs": raw.get("outputs", {}),
    }
    if opts["window"] is not None and not opts["window"][0] < opts["window"][1]:
        raise ScenarioError("window must be [x_min, x_max] with x_min < x_max")
    return sc, opts


def scenario_to_dict(sc: Scenario) -> dict:
    return {
        "states": [[sc.left.u, sc.left.v], [sc.middle.u, sc.middle.v],
                   [sc.right.u, sc.right.v]],
        "offset": sc.offset,
        "t_max": sc.t_max,
    }


def _geometry_dict(geom) -> dict:
    if isinstance(geom, Line):
        return {"type": "line", "t0": geom.t0, "x0": geom.x0, "slope": geom.m}
    if isinstance(geom, SqrtCurve):
        return {"type": "sqrt", "u_k": geom.u_k, "K": geom.K,
                "tc": geom.tc, "xc": geom.xc}
    if isinstance(geom, LogCurve):
        return {"type": "log", "C": geom.C, "tc": geom.tc, "xc": geom.xc}
    raise TypeError(type(geom))


def _front_times(front, t_max: float, n: int = 64):
    t1 = min(front.death, t_max)
    if t1 <= front.birth:
        return None
    lo = front.birth
    if isinstance(front.geom, (SqrtCurve, LogCurve)):
        # uniform in sqrt/log warp keeps the polyline within pixel tolerance
        s = np.linspace(math.sqrt(max(lo - front.geom.tc, 1e-12)),
                        math.sqrt(t1 - front.geom.tc), n)
        return front.geom.tc + s * s
    return np.linspace(lo, t1, n)


def emit(sol: Solution, out_dir, nx: int = 201, nt: int = 101,
         window=None, svg: bool = True) -> list:
    """Write events.json, fronts.csv, u.csv, v.csv, atoms.csv and (optionally)
    diagram.svg under ``out_dir``; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t_max = sol.t_max_computed
    if window is None:
        window = V.auto_window(sol, t_max, pad=1.0)
    x_grid = np.linspace(window[0], window[1], nx)
    t_grid = np.linspace(t_max / nt, t_max, nt)
    written = []

    ev_doc = {
        "case": sol.case_id,
        "label": sol.case_label,
        "scenario": scenario_to_dict(sol.scenario) if sol.scenario else None,
        "events": [
            {"t": e.t, "x": e.x, "rule": e.rule,
             "incoming": list(e.incoming), "outgoing": list(e.outgoing)}
            for e in sol.events
        ],
        "fronts": [
            {"id": f.fid, "kind": f.kind.value, "birth": f.birth,
             "death": (None if math.isinf(f.death) else f.death),
             "geometry": _geometry_dict(f.geom)}
            for f in sorted(sol.fronts.values(), key=lambda f: f.fid)
        ],
    }
    p = out / "events.json"
    p.write_text(json.dumps(ev_doc, indent=2, sort_keys=True) + "\n")
    written.append(p)

    lines = ["front_id,kind,t,x,alpha,alpha0,alpha1"]
    for f in sorted(sol.fronts.values(), key=lambda f: f.fid):
        ts = _front_times(f, t_max)
        if ts is None:
            continue
        for t in ts:
            x = f.geom.pos(t)
            if f.strength is not None:
                a = f.strength(t)
                a0, a1 = f.split(t)
                lines.append(f"{f.fid},{f.kind.value},{_fmt(t)},{_fmt(x)},"
                             f"{_fmt(a)},{_fmt(float(a0))},{_fmt(float(a1))}")
            else:
                lines.append(f"{f.fid},{f.kind.value},{_fmt(t)},{_fmt(x)},,,")
    p = out / "fronts.csv"
    p.write_text("\n".join(lines) + "\n")
    written.append(p)

    head = "t," + ",".join(_fmt(x) for x in x_grid)
    u_rows, v_rows, atom_rows = [head], [head], ["t,front_id,x,alpha,alpha0,alpha1"]
    for t in t_grid:
        s = sample(sol, float(t), x_grid)
        u_rows.append(_fmt(t) + "," + ",".join(_fmt(u) for u in s.u_vals))
        v_rows.append(_fmt(t) + "," + ",".join(_fmt(v) for v in s.v_regular_vals))
        for a in s.atoms:
            atom_rows.append(f"{_fmt(t)},{a.front_id},{_fmt(a.x)},"
                             f"{_fmt(a.alpha)},{_fmt(a.alpha0)},{_fmt(a.alpha1)}")
    for name, rows in (("u.csv", u_rows), ("v.csv", v_rows),
                       ("atoms.csv", atom_rows)):
        p = out / name
        p.write_text("\n".join(rows) + "\n")
        written.append(p)

    if svg:
        p = out / "diagram.svg"
        p.write_text(render_svg(sol, window, t_max))
        written.append(p)
    return written


def render_svg(sol: Solution, window, t_max: float,
               width: int = 880, height: int = 660) -> str:
    """x-t wave diagram: shocks solid, contacts dashed, delta fronts heavy,
    fan edges dotted, interaction events as dots."""
    m = 55.0
    x0, x1 = window
    sx = (width - 2 * m) / (x1 - x0)
    sy = (height - 2 * m) / t_max

    def px(x):
        return m + (x - x0) * sx

    def py(t):
        return height - m - t * sy

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{m:.1f}" y1="{height-m:.1f}" x2="{width-m:.1f}" '
        f'y2="{height-m:.1f}" stroke="#333" stroke-width="1"/>',
        f'<line x1="{m:.1f}" y1="{height-m:.1f}" x2="{m:.1f}" y2="{m:.1f}" '
        f'stroke="#333" stroke-width="1"/>',
        f'<text x="{width-m+8:.1f}" y="{height-m+4:.1f}" font-size="14">x</text>',
        f'<text x="{m-14:.1f}" y="{m-8:.1f}" font-size="14">t</text>',
        f'<text x="{m:.1f}" y="{height-m+18:.1f}" font-size="11" '
        f'text-anchor="middle">{_fmt(x0)}</text>',
        f'<text x="{width-m:.1f}" y="{height-m+18:.1f}" font-size="11" '
        f'text-anchor="middle">{_fmt(x1)}</text>',
        f'<text x="{m-6:.1f}" y="{m+4:.1f}" font-size="11" '
        f'text-anchor="end">{_fmt(t_max)}</text>',
    ]
    for f in sorted(sol.fronts.values(), key=lambda f: f.fid):
        ts = _front_times(f, t_max, n=256)
        if ts is None:
            continue
        xs = np.asarray(f.geom.pos(ts))
        keep = (xs >= x0 - 0.02 * (x1 - x0)) & (xs <= x1 + 0.02 * (x1 - x0))
        if not np.any(keep):
            continue
        pts = " ".join(f"{px(x):.2f},{py(t):.2f}"
                       for t, x in zip(ts[keep], xs[keep]))
        style, _ = _KIND_STYLE[f.kind]
        parts.append(f'<polyline fill="none" {style} points="{pts}"/>')
    for e in sol.events:
        if e.t <= t_max and x0 <= e.x <= x1:
            parts.append(f'<circle cx="{px(e.x):.2f}" cy="{py(e.t):.2f}" r="4" '
                         f'fill="#000"/>')
            parts.append(f'<text x="{px(e.x)+7:.2f}" y="{py(e.t)-6:.2f}" '
                         f'font-size="10" fill="#444">{e.rule}</text>')
    ly = m
    for kind, (style, label) in _KIND_STYLE.items():
        parts.append(f'<line x1="{width-200:.1f}" y1="{ly:.1f}" '
                     f'x2="{width-160:.1f}" y2="{ly:.1f}" {style}/>')
        parts.append(f'<text x="{width-152:.1f}" y="{ly+4:.1f}" '
                     f'font-size="11">{label}</text>')
        ly += 18
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _describe_fan(fan) -> str:
    lines = [f"wave structure: {fan.case.value}"]
    names = {FrontKind.SHOCK: "shock", FrontKind.CONTACT: "contact",
             FrontKind.DELTA_SHOCK: "delta shock",
             FrontKind.DELTA_CONTACT: "delta contact",
             FrontKind.FAN_EDGE: "fan edge"}
    for piece in fan.fronts:
        g = piece.geom
        desc = f"  {names[piece.kind]:13s} speed {_fmt(g.m)}"
        if piece.strength is not None:
            a0 = piece.strength(g.t0)
            r = piece.strength.rate(g.t0)
            desc += f"  strength {_fmt(a0)} + {_fmt(r)} (t - {_fmt(g.t0)})"
        lines.append(desc)
    if not fan.fronts:
        lines.append("  constant state, no waves")
    return "\n".join(lines)


def _parse_state(text: str) -> State:
    try:
        u, v = (float(p) for p in text.split(","))
    except ValueError as exc:
        raise ScenarioError(f"state must be 'u,v', got {text!r}") from exc
    return State(u, v)


def _cmd_solve(args) -> int:
    sc, opts = parse_scenario(args.scenario)
    if args.t_max is not None:
        sc = Scenario(sc.left, sc.middle, sc.right, sc.offset, args.t_max)
    nx, nt = opts["grid"]
    if args.grid:
        nx, nt = (int(p) for p in args.grid.split(","))
    window = opts["window"]
    if args.window:
        window = tuple(float(p) for p in args.window.split(","))
    sol = run(sc)
    svg = args.svg or bool(opts["outputs"].get("svg", True))
    written = emit(sol, args.out, nx=nx, nt=nt, window=window, svg=svg)
    print(f"case {sol.case_label}: {len(sol.events)} interaction event(s)")
    for e in sol.events:
        print(f"  t={_fmt(e.t)} x={_fmt(e.x)}  {e.rule}")
    for p in written:
        print(f"wrote {p}")
    return 0


def _cmd_riemann(args) -> int:
    left = _parse_state(args.left)
    right = _parse_state(args.right)
    fan = solve_grp(left, right, args.atom)
    print(_describe_fan(fan))
    return 0


def _cmd_verify(args) -> int:
    sc, _ = parse_scenario(args.scenario)
    sol = run(sc)
    phis = V.random_test_functions(sol, args.tests, seed=args.seed)
    worst = max(V.weak_residual_rel(sol, phi) for phi in phis)
    ok = True
    line = "PASS" if worst <= args.tol else "FAIL"
    ok &= worst <= args.tol
    print(f"[{line}] weak residual: max {worst:.3e} over {args.tests} "
          f"test functions (tol {args.tol:.1e})")
    t_hi = min(sc.t_max, 5.0)
    win = V.auto_window(sol, t_hi)
    merr = V.mass_balance(sol, win, np.linspace(1e-3, t_hi, 11))
    line = "PASS" if merr <= 1e-8 else "FAIL"
    ok &= merr <= 1e-8
    print(f"[{line}] mass balance: max {merr:.3e} (tol 1.0e-08)")
    margins = V.overcompressibility_report(sol)
    worst_m = min((min(lo, hi) for _, lo, hi in margins), default=0.0)
    line = "PASS" if worst_m >= -1e-9 else "FAIL"
    ok &= worst_m >= -1e-9
    print(f"[{line}] overcompressibility: min margin {worst_m:.3e}")
    return 0 if ok else 3


def _cmd_oracle(args) -> int:
    sc, _ = parse_scenario(args.scenario)
    sol = run(sc)
    orun = V.fan_approx_oracle(sc, args.n)
    te, ae = V.compare_oracle(sol, orun)
    print(f"fan steps: {args.n}")
    print(f"trajectory sup error: {te:.6e}")
    print(f"strength   sup error: {ae:.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="deltashock",
        description="Exact front tracking for delta shock wave interactions")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a scenario and emit outputs")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--grid", help="NX,NT sample grid")
    p.add_argument("--window", help="X0,X1 sample window")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--svg", action="store_true", help="force the SVG diagram")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("riemann", help="solve a two-state (generalized) "
                                       "Riemann problem and print the fan")
    p.add_argument("--left", required=True, help="u,v")
    p.add_argument("--right", required=True, help="u,v")
    p.add_argument("--atom", type=float, default=0.0,
                   help="initial point-atom mass at the origin")
    p.set_defaults(func=_cmd_riemann)

    p = sub.add_parser("verify", help="run the residual battery on a scenario")
    p.add_argument("scenario")
    p.add_argument("--tests", type=int, default=200)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="compare against the N-shock fan oracle")
    p.add_argument("scenario")
    p.add_argument("--n", type=int, required=True, help="fan step count")
    p.set_defaults(func=_cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
