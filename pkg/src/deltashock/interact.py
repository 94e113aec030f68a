"""Event-driven front tracking for three-state interaction scenarios.

A scenario is two Riemann fans (one of which is a delta shock) released from
x = offset and x = 0.  The tracker repeatedly finds the earliest interaction
among adjacent fronts (plus scheduled overcompressibility breakdowns) and
applies one of seven resolution rules; the five classical interaction cases
and their sub-cases all emerge from those rules rather than being scripted.
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import Optional

import numpy as np

from .core import (
    AffineStrength,
    ConstLaw,
    ConstantStrength,
    Epoch,
    Event,
    FanExpV,
    FanU,
    Front,
    FrontKind,
    INF,
    Line,
    LogCurve,
    Point,
    Region,
    Scenario,
    Solution,
    SqrtCurve,
    State,
)
from .fronts import (
    breakdown_time,
    characteristic_in_fan,
    fan_delta_trajectory,
    intersect,
    strength_integrate,
    w_curved_profile,
    w_straight_profile,
    w_tilde_profile,
)
from .riemann import WaveCase, rh_deficit, solve_grp, v_star

RULE_MERGE_DELTAS = "MergeDeltas"
RULE_DELTA_CROSSES_CONTACT = "DeltaCrossesContact"
RULE_SHOCK_HITS_DELTA = "ShockHitsDelta"
RULE_DELTA_ENTERS_FAN = "DeltaEntersFan"
RULE_BREAKDOWN = "BreakdownBifurcation"
RULE_FRONT_EXITS_FAN = "FrontExitsFan"
RULE_CONTACT_CONTINUATION = "ContactContinuation"

RESOLUTION_RULES = (
    RULE_MERGE_DELTAS,
    RULE_DELTA_CROSSES_CONTACT,
    RULE_SHOCK_HITS_DELTA,
    RULE_DELTA_ENTERS_FAN,
    RULE_BREAKDOWN,
    RULE_FRONT_EXITS_FAN,
    RULE_CONTACT_CONTINUATION,
)

MAX_EVENTS = 16


class ScenarioError(ValueError):
    """Scenario does not match any of the five interaction cases."""


class TrackingError(RuntimeError):
    """Internal inconsistency while building a solution."""


def validate_scenario(sc: Scenario) -> tuple[int, str]:
    """Return (case id, sub-case label) or raise naming the violated inequality.

    offset < 0 requires the (left, middle) pair to form the delta shock;
    offset > 0 requires the (middle, right) pair to.  The other pair then
    selects the case: a second delta shock (1), a shock-contact pair (2, 3),
    or a contact-rarefaction pair (4, 5).
    """
    u0, u1, u2 = sc.left.u, sc.middle.u, sc.right.u
    if sc.offset < 0.0:
        if not u0 >= u1 + 2.0:
            raise ScenarioError(
                f"u0 >= u1 + 2 violated (u0={u0}, u1={u1}); the wave starting "
                "at a negative offset must be a delta shock")
        if u1 >= u2 + 2.0:
            return 1, "1"
        if u2 < u1:
            return 2, "2"
        if u2 > u1:
            if u2 <= u0 - 2.0:
                return 4, "4(i)"
            if u0 <= u2:
                return 4, "4(ii)(a)"
            if u2 >= u0 - 1.0:
                return 4, "4(ii)(b)"
            return 4, "4(ii)(c)"
        raise ScenarioError(f"u1 != u2 required (u1={u1}, u2={u2})")
    # offset > 0
    if not u1 >= u2 + 2.0:
        raise ScenarioError(
            f"u1 >= u2 + 2 violated (u1={u1}, u2={u2}); the wave starting "
            "at a positive offset must be a delta shock")
    if u0 >= u1 + 2.0:
        return 1, "1"
    if u0 > u1:
        return 3, "3"  # u1 < u0 < u1 + 2: contact + shock at the origin
    if u0 == u1:
        raise ScenarioError(f"u0 != u1 required (u0={u0}, u1={u1})")
    # u0 < u1: contact + rarefaction at the origin
    if u0 >= u2 + 2.0:
        return 5, "5(no-bifurcation)"
    if u0 <= u2:
        return 5, "5(bifurcation,u0<=u2)"
    return 5, "5(bifurcation,u2<u0<u2+2)"


class _PendingEvent:
    __slots__ = ("t", "x", "incoming", "is_breakdown")

    def __init__(self, t, x, incoming, is_breakdown):
        self.t = t
        self.x = x
        self.incoming = incoming
        self.is_breakdown = is_breakdown


class _Tracker:
    def __init__(self, sc: Scenario):
        self.case_id, self.case_label = validate_scenario(sc)
        self.sc = sc
        self.regions: dict[int, Region] = {}
        self.fronts: dict[int, Front] = {}
        self.events: list[Event] = []
        self.epochs: list[Epoch] = []
        self._next_rid = 0
        self._next_fid = 0

    # -- construction helpers ------------------------------------------------

    def _new_region(self, u_law, v_law, label="") -> int:
        rid = self._next_rid
        self._next_rid += 1
        self.regions[rid] = Region(rid, u_law, v_law, label)
        return rid

    def _bind_singular(self, rid: int, fid: int):
        # graded quadrature applies only against this carrying front
        self.regions[rid] = replace(self.regions[rid], singular_fid=fid)

    def _traces(self, geom, lrid: int, rrid: int):
        lr, rr = self.regions[lrid], self.regions[rrid]

        def make(law):
            def trace(t, _law=law, _geom=geom):
                return _law(_geom.pos(t), t)
            return trace

        return (make(lr.u_law), make(lr.v_law), make(rr.u_law), make(rr.v_law))

    def _new_front(self, kind, geom, lrid, rrid, strength=None, birth=0.0,
                   breakdown_t=None) -> int:
        fid = self._next_fid
        self._next_fid += 1
        f = Front(fid, kind, geom, lrid, rrid, strength,
                  self._traces(geom, lrid, rrid), birth=birth,
                  breakdown_t=breakdown_t)
        if kind is FrontKind.DELTA_SHOCK:
            self._check_overcompressive(f)
        self.fronts[fid] = f
        return fid

    def _check_overcompressive(self, f: Front):
        from .core import TabulatedStrength
        if f.breakdown_t is not None:
            t_hi = f.breakdown_t
        elif isinstance(f.strength, TabulatedStrength):
            t_hi = f.strength.t1
        else:
            t_hi = f.birth + 1.0
        ts = f.birth + (t_hi - f.birth) * np.linspace(1e-6, 1.0 - 1e-6, 7)
        u_left, _, u_right, _ = f.traces
        cdot = np.asarray(f.geom.slope(ts))
        lo = np.asarray(u_right(ts)) - cdot
        hi = cdot - (np.asarray(u_left(ts)) - 1.0)
        tol = 1e-9
        if np.any(lo > tol) or np.any(hi > tol):
            raise TrackingError(
                f"non-overcompressive delta shock spawned (front {f.fid}, "
                f"max violations {float(np.max(lo)):.3e}, {float(np.max(hi)):.3e})")

    def _materialize_fan(self, fan, left_rid: int, right_rid: int):
        """Instantiate a WaveFan's fronts/regions between two existing regions."""
        inner = [self._new_region(u_law, v_law, "fan-inner")
                 for (u_law, v_law) in fan.regions[1:-1]]
        rids = [left_rid] + inner + [right_rid]
        fids = []
        for k, piece in enumerate(fan.fronts):
            geom = piece.geom
            if geom.t_lo != fan.origin.t:
                geom = Line(geom.t0, geom.x0, geom.m, t_lo=fan.origin.t)
            fids.append(self._new_front(piece.kind, geom, rids[k], rids[k + 1],
                                        strength=piece.strength,
                                        birth=fan.origin.t))
        return fids, inner

    def build_initial(self):
        sc = self.sc
        if sc.offset < 0.0:
            left_origin, right_origin = Point(0.0, sc.offset), Point(0.0, 0.0)
        else:
            left_origin, right_origin = Point(0.0, 0.0), Point(0.0, sc.offset)
        rid_l = self._new_region(ConstLaw(sc.left.u), ConstLaw(sc.left.v), "left")
        rid_m = self._new_region(ConstLaw(sc.middle.u), ConstLaw(sc.middle.v), "middle")
        rid_r = self._new_region(ConstLaw(sc.right.u), ConstLaw(sc.right.v), "right")
        fan_l = solve_grp(sc.left, sc.middle, 0.0, left_origin)
        fan_r = solve_grp(sc.middle, sc.right, 0.0, right_origin)
        fids_l, _ = self._materialize_fan(fan_l, rid_l, rid_m)
        fids_r, _ = self._materialize_fan(fan_r, rid_m, rid_r)
        fronts = tuple(fids_l + fids_r)
        regions = self._regions_for(fronts, rid_l, rid_r)
        self.epochs.append(Epoch(0.0, INF, fronts, regions))

    def _regions_for(self, fronts, leftmost, rightmost):
        regions = [leftmost]
        for fid in fronts:
            regions.append(self.fronts[fid].right_region)
        if regions[-1] != rightmost:
            raise TrackingError("region chain mismatch")
        return tuple(regions)

    # -- event loop ----------------------------------------------------------

    def next_event(self) -> Optional[_PendingEvent]:
        ep = self.epochs[-1]
        t_now = ep.t0
        after = t_now * (1.0 + 1e-9) + 1e-12
        fronts = [self.fronts[f] for f in ep.fronts]
        cands = []
        for a, b in zip(fronts, fronts[1:]):
            p = intersect(a.geom, b.geom, after)
            if p is not None:
                cands.append((p.t, p.x, (a.fid, b.fid), False))
        for f in fronts:
            if f.breakdown_t is not None and f.breakdown_t > after:
                cands.append((f.breakdown_t, f.geom.pos(f.breakdown_t),
                              (f.fid,), True))
        if not cands:
            return None
        t_min = min(c[0] for c in cands)
        tol_t = 1e-9 * (1.0 + t_min)
        group = [c for c in cands if c[0] <= t_min + tol_t]
        group.sort(key=lambda c: c[1])
        x_ref = group[0][1]
        tol_x = 1e-9 * (1.0 + abs(x_ref))
        cluster = [c for c in group if abs(c[1] - x_ref) <= tol_x]
        # exit and breakdown coinciding: the exit (transversal crossing) wins
        crossings = [c for c in cluster if not c[3]]
        if crossings:
            cluster = crossings
        fids = {fid for c in cluster for fid in c[2]}
        order = {fid: i for i, fid in enumerate(ep.fronts)}
        incoming = tuple(sorted(fids, key=order.__getitem__))
        idxs = [order[f] for f in incoming]
        if idxs != list(range(idxs[0], idxs[0] + len(idxs))):
            raise TrackingError(f"non-adjacent fronts in event at t={t_min}")
        return _PendingEvent(t_min, x_ref, incoming, cluster[0][3])

    def resolve(self, ev: _PendingEvent):
        kinds = [self.fronts[f].kind for f in ev.incoming]
        if ev.is_breakdown and len(ev.incoming) == 1:
            return self._resolve_breakdown(ev)
        kindset = set(kinds)
        if kindset == {FrontKind.DELTA_SHOCK}:
            return self._resolve_merge(ev, RULE_MERGE_DELTAS)
        if kindset == {FrontKind.DELTA_SHOCK, FrontKind.SHOCK}:
            return self._resolve_merge(ev, RULE_SHOCK_HITS_DELTA)
        if kindset == {FrontKind.DELTA_SHOCK, FrontKind.CONTACT}:
            return self._resolve_delta_crosses_contact(ev)
        if FrontKind.FAN_EDGE in kindset and len(ev.incoming) == 2:
            other = next(self.fronts[f] for f in ev.incoming
                         if self.fronts[f].kind is not FrontKind.FAN_EDGE)
            if other.kind is FrontKind.DELTA_SHOCK and isinstance(other.geom, Line):
                return self._resolve_delta_enters_fan(ev)
            if other.kind is FrontKind.DELTA_SHOCK:
                return self._resolve_front_exits_fan(ev, other)
            if other.kind is FrontKind.SHOCK and isinstance(other.geom, SqrtCurve):
                return self._resolve_front_exits_fan(ev, other)
            if other.kind is FrontKind.DELTA_CONTACT and isinstance(other.geom, LogCurve):
                return self._resolve_contact_continuation(ev)
        raise TrackingError(
            f"no resolution rule for fronts {ev.incoming} of kinds {kinds} "
            f"at t={ev.t}, x={ev.x}")

    # -- commit machinery ----------------------------------------------------

    def _slice_bounds(self, ev: _PendingEvent):
        ep = self.epochs[-1]
        order = {fid: i for i, fid in enumerate(ep.fronts)}
        i = order[ev.incoming[0]]
        j = order[ev.incoming[-1]]
        return ep, i, j

    def _commit(self, ev, rule, new_fids):
        ep, i, j = self._slice_bounds(ev)
        for fid in ev.incoming:
            self.fronts[fid].death = ev.t
        gamma_in = sum(self.fronts[f].strength(ev.t) for f in ev.incoming
                       if self.fronts[f].strength is not None)
        gamma_out = sum(self.fronts[f].strength(ev.t) for f in new_fids
                        if self.fronts[f].strength is not None)
        if abs(gamma_out - gamma_in) > 1e-10 * (1.0 + abs(gamma_in)):
            raise TrackingError(
                f"strength not conserved at t={ev.t}: in={gamma_in}, out={gamma_out}")
        fronts = ep.fronts[:i] + tuple(new_fids) + ep.fronts[j + 1:]
        regions = self._regions_for(fronts, ep.regions[0], ep.regions[-1])
        ep.t1 = ev.t
        self.epochs.append(Epoch(ev.t, INF, fronts, regions))
        self.events.append(Event(ev.t, ev.x, rule, ev.incoming, tuple(new_fids)))

    def _outer_regions(self, ev):
        ep, i, j = self._slice_bounds(ev)
        return ep.regions[i], ep.regions[j + 1]

    # -- resolution rules ----------------------------------------------------

    def _resolve_merge(self, ev, rule):
        lrid, rrid = self._outer_regions(ev)
        state_l = self.regions[lrid].const_state()
        state_r = self.regions[rrid].const_state()
        gamma = sum(self.fronts[f].strength(ev.t) for f in ev.incoming
                    if self.fronts[f].strength is not None)
        fan = solve_grp(state_l, state_r, gamma, Point(ev.t, ev.x))
        fids, _ = self._materialize_fan(fan, lrid, rrid)
        self._commit(ev, rule, fids)

    def _resolve_delta_crosses_contact(self, ev):
        delta = next(self.fronts[f] for f in ev.incoming
                     if self.fronts[f].kind is FrontKind.DELTA_SHOCK)
        lrid, rrid = self._outer_regions(ev)
        state_l = self.regions[lrid].const_state()
        state_r = self.regions[rrid].const_state()
        speed = 0.5 * (state_l.u + state_r.u)
        if abs(speed - delta.geom.m) > 1e-9 * (1.0 + abs(speed)):
            raise TrackingError("delta speed changed across a contact")
        law = AffineStrength(rh_deficit(state_l, state_r, speed),
                             delta.strength(ev.t), ev.t)
        fid = self._new_front(FrontKind.DELTA_SHOCK,
                              Line(ev.t, ev.x, speed, t_lo=ev.t),
                              lrid, rrid, strength=law, birth=ev.t)
        self._commit(ev, RULE_DELTA_CROSSES_CONTACT, [fid])

    def _resolve_delta_enters_fan(self, ev):
        delta = next(self.fronts[f] for f in ev.incoming
                     if self.fronts[f].kind is FrontKind.DELTA_SHOCK)
        lrid, rrid = self._outer_regions(ev)
        left, right = self.regions[lrid], self.regions[rrid]
        fan_on_right = isinstance(right.u_law, FanU)
        fan_reg, const_reg = (right, left) if fan_on_right else (left, right)
        const = const_reg.const_state()
        center = Point(fan_reg.u_law.tc, fan_reg.u_law.xc)
        curve = fan_delta_trajectory(Point(ev.t, ev.x), const.u, center)
        gamma0 = delta.strength(ev.t)
        t_s = breakdown_time(curve)
        # remaining fan edge: the front beyond the fan region in the new order
        ep, i, j = self._slice_bounds(ev)
        far_edge_idx = j + 1 if fan_on_right else i - 1
        far_edge = self.fronts[ep.fronts[far_edge_idx]]
        p_exit = intersect(curve, far_edge.geom, after=ev.t * (1 + 1e-12))
        t_exit = p_exit.t if p_exit is not None else INF
        t_end = min(t_s if t_s is not None else INF, t_exit)
        if not (t_end > ev.t) or not math.isfinite(t_end):
            raise TrackingError(
                f"degenerate fan passage at t={ev.t} (t_s={t_s}, t_exit={t_exit})")
        schedule_breakdown = (t_s is not None
                              and t_s < t_exit * (1.0 - 1e-12))

        # deficit rate with the fan-side trace varying along the curve
        u_l_law, v_l_law = left.u_law, left.v_law
        u_r_law, v_r_law = right.u_law, right.v_law

        def rate(t):
            x = curve.pos(t)
            cp = curve.slope(t)
            uL = u_l_law(x, t)
            vL = v_l_law(x, t)
            uR = u_r_law(x, t)
            vR = v_r_law(x, t)
            return cp * (vR - vL) - ((uR - 1.0) * vR - (uL - 1.0) * vL)

        law = strength_integrate(rate, ev.t, t_end, gamma0)
        fid = self._new_front(FrontKind.DELTA_SHOCK, curve, lrid, rrid,
                              strength=law, birth=ev.t,
                              breakdown_t=t_s if schedule_breakdown else None)
        self._commit(ev, RULE_DELTA_ENTERS_FAN, [fid])

    def _resolve_breakdown(self, ev):
        delta = self.fronts[ev.incoming[0]]
        curve: SqrtCurve = delta.geom
        lrid, rrid = self._outer_regions(ev)
        left, right = self.regions[lrid], self.regions[rrid]
        gamma_s = delta.strength(ev.t)
        B = 0.5 * abs(curve.K)
        t_s, x_s = ev.t, ev.x
        cont = SqrtCurve(curve.u_k, curve.K, curve.tc, curve.xc, t_lo=t_s)
        if isinstance(right.u_law, FanU):
            # constant state on the left: straight delta contact, slope u0 - 1
            u0 = left.const_state().u
            fan_v: FanExpV = right.v_law
            w_rid = self._new_region(
                ConstLaw(u0),
                w_straight_profile(B, u0, fan_v.v_ref, fan_v.u_ref,
                                   x_s - (u0 - 1.0) * t_s),
                "w-straight")
            f1 = self._new_front(FrontKind.DELTA_CONTACT,
                                 Line(t_s, x_s, u0 - 1.0, t_lo=t_s),
                                 lrid, w_rid,
                                 strength=ConstantStrength(gamma_s), birth=t_s)
            f2 = self._new_front(FrontKind.SHOCK, cont, w_rid, rrid, birth=t_s)
            self._bind_singular(w_rid, f1)
        else:
            # constant state on the right: the contact rides a fan characteristic
            st_r = right.const_state()
            center = Point(left.u_law.tc, left.u_law.xc)
            gamma_curve = characteristic_in_fan(Point(t_s, x_s), center)
            w_rid = self._new_region(FanU(center.t, center.x),
                                     w_curved_profile(B, st_r.v, st_r.u),
                                     "w-curved")
            f1 = self._new_front(FrontKind.DELTA_CONTACT, gamma_curve,
                                 lrid, w_rid,
                                 strength=ConstantStrength(gamma_s), birth=t_s)
            f2 = self._new_front(FrontKind.SHOCK, cont, w_rid, rrid, birth=t_s)
            self._bind_singular(w_rid, f1)
        self._commit(ev, RULE_BREAKDOWN, [f1, f2])

    def _resolve_front_exits_fan(self, ev, exiting: Front):
        lrid, rrid = self._outer_regions(ev)
        left, right = self.regions[lrid], self.regions[rrid]
        if exiting.kind is FrontKind.DELTA_SHOCK:
            gamma = exiting.strength(ev.t)
            state_l = left.const_state()
            state_r = right.const_state()
            fan = solve_grp(state_l, state_r, gamma, Point(ev.t, ev.x))
            if fan.case is not WaveCase.DELTA_SHOCK:
                raise TrackingError(
                    f"delta shock exited a fan without the u-gap >= 2 "
                    f"(u_l={state_l.u}, u_r={state_r.u})")
            fids, _ = self._materialize_fan(fan, lrid, rrid)
            self._commit(ev, RULE_FRONT_EXITS_FAN, fids)
            return
        # classical shock leaves the fan: contact + shock pair, with the
        # singular region prolonged continuously across the new contact
        if not (isinstance(left.u_law, ConstLaw) and left.v_law.singular_left):
            raise TrackingError("unexpected exit orientation for a shock")
        u0 = left.u_law.value
        st_r = right.const_state()
        v_tilde = v_star(u0, st_r.u, st_r.v)
        w_trace = left.v_law(ev.x, ev.t)
        if abs(w_trace - v_tilde) > 1e-10 * (1.0 + abs(v_tilde)):
            raise TrackingError(
                f"w-trace {w_trace} does not match v* {v_tilde} at fan exit")
        mid_rid = self._new_region(ConstLaw(u0), ConstLaw(v_tilde), "post-exit")
        f_contact = self._new_front(FrontKind.CONTACT,
                                    Line(ev.t, ev.x, u0 - 1.0, t_lo=ev.t),
                                    lrid, mid_rid, birth=ev.t)
        f_shock = self._new_front(FrontKind.SHOCK,
                                  Line(ev.t, ev.x, 0.5 * (u0 + st_r.u), t_lo=ev.t),
                                  mid_rid, rrid, birth=ev.t)
        self._commit(ev, RULE_FRONT_EXITS_FAN, [f_contact, f_shock])

    def _resolve_contact_continuation(self, ev):
        edge = next(self.fronts[f] for f in ev.incoming
                    if self.fronts[f].kind is FrontKind.FAN_EDGE)
        dc = next(self.fronts[f] for f in ev.incoming
                  if self.fronts[f].kind is FrontKind.DELTA_CONTACT)
        lrid, rrid = self._outer_regions(ev)
        left = self.regions[lrid]          # constant (u0, v_*) beyond the edge
        w_curved = self.regions[rrid]      # singular fan-interior region
        u0 = left.const_state().u
        wlaw = w_curved.v_law
        gamma = dc.strength(ev.t)
        w_tilde_rid = self._new_region(
            ConstLaw(u0), w_tilde_profile(u0, wlaw.B, wlaw.v2, wlaw.u2),
            "w-tilde")
        f_dc = self._new_front(FrontKind.DELTA_CONTACT,
                               Line(ev.t, ev.x, u0 - 1.0, t_lo=ev.t),
                               lrid, w_tilde_rid,
                               strength=ConstantStrength(gamma), birth=ev.t)
        self._bind_singular(w_tilde_rid, f_dc)
        f_edge = self._new_front(FrontKind.FAN_EDGE,
                                 Line(edge.geom.t0, edge.geom.x0, edge.geom.m,
                                      t_lo=ev.t),
                                 w_tilde_rid, rrid, birth=ev.t)
        self._commit(ev, RULE_CONTACT_CONTINUATION, [f_dc, f_edge])

    # -- driver ----------------------------------------------------------------

    def track(self) -> Solution:
        self.build_initial()
        while True:
            ev = self.next_event()
            if ev is None:
                break
            if len(self.events) >= MAX_EVENTS:
                raise TrackingError(
                    f"event budget exceeded; last event at t={self.events[-1].t}")
            self.resolve(ev)
        return Solution(self.sc, self.case_id, self.case_label,
                        self.regions, self.fronts, self.events, self.epochs,
                        t_max_computed=self.sc.t_max, complete=True)


def run(sc: Scenario) -> Solution:
    """Construct the global weak solution for a valid scenario.

    Terminates after a bounded number of events; the returned graph's front
    descriptions stay valid for all t >= 0 (the solution is global), with
    ``t_max_computed`` only bounding default sampling horizons.
    """
    return _Tracker(sc).track()


def next_event(sol_or_tracker, after: float = None):
    """Earliest pending interaction of a tracker state (diagnostic helper)."""
    if isinstance(sol_or_tracker, _Tracker):
        return sol_or_tracker.next_event()
    raise TypeError("next_event operates on an in-progress tracker")


def fan_solution(left: State, right: State, gamma: float = 0.0,
                 t_max: float = 10.0) -> Solution:
    """Wrap a single (generalized) Riemann fan as a one-epoch Solution.

    Used to verify standalone two-state solutions with the same residual
    machinery that checks full interaction solutions.
    """
    tr = _Tracker.__new__(_Tracker)
    tr.case_id, tr.case_label = 0, "riemann"
    tr.sc = None
    tr.regions, tr.fronts, tr.events, tr.epochs = {}, {}, [], []
    tr._next_rid = tr._next_fid = 0
    rid_l = tr._new_region(ConstLaw(left.u), ConstLaw(left.v), "left")
    fan = solve_grp(left, right, gamma, Point(0.0, 0.0))
    if not fan.fronts:
        tr.epochs.append(Epoch(0.0, INF, (), (rid_l,)))
        return Solution(None, 0, "riemann", tr.regions, tr.fronts, [],
                        tr.epochs, t_max_computed=t_max, complete=True)
    rid_r = tr._new_region(ConstLaw(right.u), ConstLaw(right.v), "right")
    fids, _ = tr._materialize_fan(fan, rid_l, rid_r)
    fronts = tuple(fids)
    tr.epochs.append(Epoch(0.0, INF, fronts, tr._regions_for(fronts, rid_l, rid_r)))
    return Solution(None, 0, "riemann", tr.regions, tr.fronts, [], tr.epochs,
                    t_max_computed=t_max, complete=True)
