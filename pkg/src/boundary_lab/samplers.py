"""Seeded point and pair samplers for the example spaces.

Every sampler is a closure over its space taking a ``random.Random``; all
randomness flows through that generator, so runs are deterministic given
(seed, parameters).  Rational parameters are drawn on a dyadic grid so the
exact engines stay exact.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from .annulus import AnnulusSpace
from .contraction import ray_distance
from .points import Point
from .ray_complex import RayComplex
from .rays import UnitSpeedRay

DENOM = 16  # dyadic denominator for rational sampling


def rc_point_sampler(space: RayComplex, horizon) -> Callable:
    """Uniform edge choice, dyadic-rational parameter."""
    edge_ids = sorted(space.edges)
    hor = Fraction(horizon)

    def sample(rng: random.Random) -> Point:
        eid = edge_ids[rng.randrange(len(edge_ids))]
        edge = space.edges[eid]
        top = hor if edge.length is None else min(edge.length, hor)
        steps = int(top * DENOM)
        off = Fraction(rng.randint(0, max(steps, 0)), DENOM)
        return space.point(eid, min(off, top))

    return sample


def annulus_point_sampler(
    space: AnnulusSpace,
    t_lo: float,
    t_hi: float,
    r_max: float,
    p_attached: float = 0.15,
    s_max: float = 20.0,
) -> Callable:
    """Uniform angle, log-uniform radius, occasional attached-ray point."""
    ray_ids = sorted(space.attached)

    def sample(rng: random.Random) -> Point:
        if ray_ids and rng.random() < p_attached:
            rid = ray_ids[rng.randrange(len(ray_ids))]
            return space.ray_pt(rid, rng.uniform(0.0, s_max))
        t = rng.uniform(t_lo, t_hi)
        r = math.exp(rng.uniform(0.0, math.log(r_max)))
        return space.pt(t, max(1.0, r))

    return sample


def profile_pair_sampler(
    space,
    gamma: UnitSpeedRay,
    horizon,
    r_min: float = 0.05,
    r_max: float = 64.0,
) -> Callable:
    """Propose (x, y) pairs for contraction profiles.

    x is placed near the ray at a log-uniform offset scale, y inside a ball
    around x of radius roughly d(x, gamma); inadmissible proposals are
    filtered by the profiler, so this only has to be a decent proposal
    distribution, not an exact one.
    """
    is_rc = isinstance(space, RayComplex)
    point_sampler = (
        rc_point_sampler(space, horizon)
        if is_rc
        else annulus_point_sampler(space, -5.0, float(horizon), r_max)
    )

    def sample(rng: random.Random):
        if is_rc:
            x = point_sampler(rng)
            if rng.random() < 0.7:
                # nearby proposal on the same edge: far pairs rarely pass
                # the admissibility filter, so bias toward local ones
                edge = space.edges[x.edge_id]
                top = Fraction(horizon) if edge.length is None else edge.length
                shift = (top * rng.randint(-DENOM, DENOM)) / (4 * DENOM)
                off = min(max(x.offset + shift, 0), top)
                y = space.point(x.edge_id, off)
            else:
                y = point_sampler(rng)
            return x, y
        scale = math.exp(rng.uniform(math.log(r_min), math.log(r_max)))
        u = rng.uniform(0.0, float(horizon) * 0.8)
        anchor = gamma.eval(u)
        if not hasattr(anchor, "r"):  # attached-ray anchor: hang off the base
            base = space.attached[anchor.ray_id]
            anchor_t, anchor_r = base
        else:
            anchor_t, anchor_r = anchor.t, anchor.r
        style = rng.random()
        if style < 0.5:
            x = space.pt(anchor_t, anchor_r + scale)
        elif style < 0.8:
            x = space.pt(anchor_t + scale / max(anchor_r, 1.0), anchor_r)
        else:
            x = space.pt(anchor_t - scale / max(anchor_r, 1.0), max(1.0, anchor_r))
        try:
            dxg, _ = ray_distance(x, gamma, None)
        except Exception:
            return None
        if dxg <= 0:
            return None
        rho = rng.uniform(0.0, float(dxg))
        ang = rng.uniform(0.0, 2.0 * math.pi)
        y = space.pt(
            x.t + rho * math.cos(ang) / max(x.r, 1.0),
            max(1.0, x.r + rho * math.sin(ang)),
        )
        return x, y

    return sample
