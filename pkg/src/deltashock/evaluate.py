"""Pointwise sampling of a Solution: u, the regular part of v, and the
delta atoms alive at a given time with positions, strengths, and splits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Solution

_ON_FRONT_TOL = 1e-12


@dataclass(frozen=True)
class Atom:
    x: float
    alpha: float
    alpha0: float
    alpha1: float
    front_id: int


@dataclass(frozen=True)
class Sample:
    t: float
    xs: np.ndarray
    u_vals: np.ndarray
    v_regular_vals: np.ndarray
    atoms: tuple


def atoms_at(sol: Solution, t: float):
    """All delta atoms alive at time t, sorted by position.

    One entry per strength-carrying front; the split components come from
    the front's delta'-coefficient rule.
    """
    if t <= 0.0:
        raise ValueError("atoms are defined for t > 0")
    out = []
    for f in sol.atom_fronts_at(t):
        a = f.strength(t)
        a0, a1 = f.split(t)
        out.append(Atom(f.geom.pos(t), a, a0, a1, f.fid))
    out.sort(key=lambda a: a.x)
    return tuple(out)


def sample(sol: Solution, t: float, xs) -> Sample:
    """Evaluate u and the regular part of v at positions ``xs``.

    Queries within 1e-12 of a front resolve to the left region (documented
    convention).  Points essentially on a singular profile boundary come back
    as signed infinities, never as silently huge finite numbers.
    """
    if t <= 0.0:
        raise ValueError("sampling requires t > 0")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ep = sol.epoch_at(t)
    pos = np.array([sol.fronts[f].geom.pos(t) for f in ep.fronts], dtype=float)
    idx = np.searchsorted(pos, xs, side="right")
    if len(pos):
        near = idx >= 1
        shift = np.zeros_like(idx, dtype=bool)
        shift[near] = np.abs(xs[near] - pos[idx[near] - 1]) \
            <= _ON_FRONT_TOL * (1.0 + np.abs(pos[idx[near] - 1]))
        idx[shift] -= 1
    u = np.empty_like(xs)
    v = np.empty_like(xs)
    for k in np.unique(idx):
        reg = sol.regions[ep.regions[k]]
        m = idx == k
        u[m] = reg.u_law(xs[m], t)
        v[m] = reg.v_law(xs[m], t)
    return Sample(t, xs, u, v, atoms_at(sol, t))
