"""Curve algebra: fan-interior trajectories, breakdown detection,
characteristics, intersections, and the singular profiles next to
bifurcated fronts."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .core import (
    CurveGeometry,
    Line,
    LogCurve,
    Point,
    SqrtCurve,
    State,
    TabulatedStrength,
    WCurvedV,
    WStraightV,
    WTildeCurvedV,
)
from .riemann import rh_deficit

_REL = 1e-12


def fan_delta_trajectory(entry: Point, u_const: float, fan_center: Point) -> SqrtCurve:
    """Trajectory of a delta shock flanked by the constant state u_const on
    one side and a fan centered at ``fan_center`` on the other.

    Solves c'(t) = (c(t)/t + u_const)/2 through the entry point (the u-field
    Rankine-Hugoniot condition with trace x/t on the fan side):
    c(t) = u_const t + K sqrt(t) with K = (x0 - u_const t0)/sqrt(t0) in
    fan-centered coordinates.
    """
    dt = entry.t - fan_center.t
    if dt <= 0.0:
        raise ValueError("entry point must lie strictly later than the fan center")
    dx = entry.x - fan_center.x
    K = (dx - u_const * dt) / math.sqrt(dt)
    return SqrtCurve(u_const, K, fan_center.t, fan_center.x, t_lo=entry.t)


def breakdown_time(curve: SqrtCurve) -> Optional[float]:
    """Time at which a fan-interior delta trajectory loses overcompressibility.

    The margin |K|/(2 sqrt(t - tc)) - 1 crosses zero at t_s = tc + K^2/4;
    there the constant-side inequality u_k -/+ 1 >< c'(t) becomes an equality
    and the fan-side trace equals u_k -/+ 2.  None when K = 0 or t_s falls
    outside the curve's range.
    """
    if curve.K == 0.0:
        return None
    ts = curve.tc + 0.25 * curve.K * curve.K
    if ts <= curve.t_lo or ts >= curve.t_hi:
        return None
    return ts


def characteristic_in_fan(through: Point, fan_center: Point) -> LogCurve:
    """The lambda1-characteristic dx/dt = x/t - 1 of a fan through a point."""
    dt = through.t - fan_center.t
    if dt <= 0.0:
        raise ValueError("characteristic anchor must lie after the fan center")
    dx = through.x - fan_center.x
    C = dx / dt + math.log(dt)
    return LogCurve(C, fan_center.t, fan_center.x, t_lo=through.t)


def _bisect(f: Callable, lo: float, hi: float, iters: int = 200) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if (f(mid) > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _line_line(a: Line, b: Line, after: float) -> Optional[float]:
    dm = a.m - b.m
    num = (b.x0 - b.m * b.t0) - (a.x0 - a.m * a.t0)
    if dm == 0.0:
        return None
    t = num / dm
    return t if t > after else None


def _line_sqrt(a: Line, b: SqrtCurve, after: float) -> Optional[float]:
    # in s = sqrt(t - tc):  (m - u_k) s^2 - K s + (line(tc) - xc) = 0
    ca = a.m - b.u_k
    cb = -b.K
    cc = (a.x0 + a.m * (b.tc - a.t0)) - b.xc
    roots = []
    if ca == 0.0:
        if cb != 0.0:
            roots = [-cc / cb]
    else:
        disc = cb * cb - 4.0 * ca * cc
        scale = cb * cb + abs(4.0 * ca * cc)
        if abs(disc) <= 1e-14 * max(scale, 1e-300):
            return None  # grazing contact: tangency, no transversal event
        if disc < 0.0:
            return None
        sq = math.sqrt(disc)
        roots = [(-cb - sq) / (2.0 * ca), (-cb + sq) / (2.0 * ca)]
    ts = sorted(b.tc + s * s for s in roots if s > 0.0)
    for t in ts:
        if t > after:
            return t
    return None


def _line_log(a: Line, b: LogCurve, after: float) -> Optional[float]:
    # closed form when the line passes through the log curve's center
    x_at_tc = a.x0 + a.m * (b.tc - a.t0)
    if abs(x_at_tc - b.xc) <= 1e-14 * (1.0 + abs(b.xc)):
        t = b.tc + math.exp(b.C - a.m)
        return t if t > after else None
    return _scan_root(lambda t: b.pos(t) - a.pos(t), max(after, b.t_lo), after,
                      scale=lambda t: 1.0 + abs(a.pos(t)) + abs(b.pos(t)))


def _sqrt_log(a: SqrtCurve, b: LogCurve, after: float) -> Optional[float]:
    lo = max(after, a.t_lo, b.t_lo)
    return _scan_root(lambda t: b.pos(t) - a.pos(t), lo, after,
                      scale=lambda t: 1.0 + abs(a.pos(t)) + abs(b.pos(t)))


def _scan_root(f: Callable, lo: float, after: float,
               scale: Callable = None) -> Optional[float]:
    """Bracketed first root of f past ``lo`` by geometric scanning, or None.

    Samples whose magnitude sits below the floating-point noise floor carry
    no sign information (curves that touch tangentially hover there), so sign
    changes are only trusted between samples that clear the floor.
    """
    if lo <= 0.0:
        lo = 1e-12
    if scale is None:
        scale = lambda t: 1.0 + abs(t)

    def floor(t):
        return 1e-11 * scale(t)

    t_prev = lo * (1.0 + 1e-9)
    f_prev = f(t_prev)
    step = max(t_prev * 0.1, 1e-6)
    for _ in range(260):
        t_next = t_prev + step
        f_next = f(t_next)
        if (f_prev * f_next < 0.0 and abs(f_prev) > floor(t_prev)
                and abs(f_next) > floor(t_next)):
            root = _bisect(f, t_prev, t_next)
            # polish with a secant step
            h = 1e-7 * (1.0 + root)
            d = (f(root + h) - f(root - h)) / (2.0 * h)
            if d != 0.0:
                root -= f(root) / d
            return root if root > after else None
        if abs(f_next) > floor(t_next):
            t_prev, f_prev = t_next, f_next
        step *= 1.35
    return None


def intersect(a: CurveGeometry, b: CurveGeometry, after: float) -> Optional[Point]:
    """Earliest transversal intersection of two front geometries with
    t > after, or None.  Grazing (tangential) contacts count as no event.
    """
    t = None
    if isinstance(a, Line) and isinstance(b, Line):
        t = _line_line(a, b, after)
    elif isinstance(a, Line) and isinstance(b, SqrtCurve):
        t = _line_sqrt(a, b, after)
    elif isinstance(a, SqrtCurve) and isinstance(b, Line):
        t = _line_sqrt(b, a, after)
    elif isinstance(a, Line) and isinstance(b, LogCurve):
        t = _line_log(a, b, after)
    elif isinstance(a, LogCurve) and isinstance(b, Line):
        t = _line_log(b, a, after)
    elif isinstance(a, SqrtCurve) and isinstance(b, LogCurve):
        t = _sqrt_log(a, b, after)
    elif isinstance(a, LogCurve) and isinstance(b, SqrtCurve):
        t = _sqrt_log(b, a, after)
    elif isinstance(a, SqrtCurve) and isinstance(b, SqrtCurve):
        if (a.tc, a.xc) == (b.tc, b.xc) and a.u_k == b.u_k:
            return None  # same family: identical or disjoint
        t = _scan_root(lambda tt: b.pos(tt) - a.pos(tt),
                       max(after, a.t_lo, b.t_lo), after)
    else:
        raise TypeError(f"unsupported geometry pair {type(a)}, {type(b)}")
    if t is None:
        return None
    return Point(t, 0.5 * (a.pos(t) + b.pos(t)))


def shock_left_trace(curve: SqrtCurve, right_u: Callable, right_v: Callable,
                     left_u: Callable) -> Callable:
    """Trace of v on the unknown (left) side of a post-breakdown shock.

    Pointwise v-Rankine-Hugoniot along the curve:
    v_L = v_R (c' - u_R + 1)/(c' - u_L + 1).  For the fan-right geometry this
    collapses to (sqrt(t)+B)/(sqrt(t)-B) v_fan(t) with B = |K|/2, blowing up
    in a locally integrable way as t -> t_s = B^2 from above.
    """
    ts = curve.tc + 0.25 * curve.K * curve.K

    def trace(t):
        t = np.asarray(t, dtype=float)
        if np.any(t <= ts):
            raise ValueError("trace defined only past the breakdown time")
        cp = curve.slope(t)
        uR = np.asarray(right_u(t), dtype=float)
        vR = np.asarray(right_v(t), dtype=float)
        uL = np.asarray(left_u(t), dtype=float)
        return vR * (cp - uR + 1.0) / (cp - uL + 1.0)

    return trace


def w_straight_profile(B: float, u0: float, v_ref: float, u_ref: float,
                       y_edge: float) -> WStraightV:
    """Field law for the straight-characteristic singular region (the
    constant-u0 pocket between a breakdown delta contact and the shock)."""
    return WStraightV(B, u0, v_ref, u_ref, y_edge)


def w_curved_profile(B: float, v2: float, u2: float) -> WCurvedV:
    """Field law for the fan-interior singular region behind the shock."""
    return WCurvedV(B, v2, u2)


def w_tilde_profile(u0: float, B: float, v2: float, u2: float) -> WTildeCurvedV:
    """Prolongation of the curved profile across the fan edge x = u0 t."""
    return WTildeCurvedV(u0, B, v2, u2)


def strength_rate(speed, left, right):
    """Instantaneous growth rate of a delta strength: the deficit
    c'[v] - [(u-1)v] with the given one-sided traces."""
    if isinstance(left, State):
        return rh_deficit(left, right, speed)
    uL, vL = left
    uR, vR = right
    return speed * (vR - vL) - ((uR - 1.0) * vR - (uL - 1.0) * vL)


def strength_integrate(rate_fn: Callable, t0: float, t1: float, gamma0: float,
                       panels: int = 64) -> TabulatedStrength:
    """Integrate a smooth explicit-in-t rate into a tabulated strength law
    with alpha(t0) = gamma0."""
    return TabulatedStrength(rate_fn, t0, t1, gamma0, panels=panels)
