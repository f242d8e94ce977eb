"""Unit-speed rays assembled from legs.

A ray is a concatenation of legs, each of which knows how to evaluate a
point at a given arc length.  Legs come in four kinds: an interval on a
ray-complex edge, an arc along the r = 1 boundary circle, a straight
disk-avoiding chord between two cover points, and an attached ray.  The
composite is required by construction to be a unit-speed geodesic in its
host space; the test suite spot-checks that invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError
from .points import AnnulusPoint, AttachedRayPoint, Point, RayComplexPoint


@dataclass(frozen=True)
class EdgeLeg:
    """Parameter interval [start, end] on a ray-complex edge (end=None: to infinity)."""

    edge_id: str
    start: Fraction
    end: Optional[Fraction]

    @property
    def length(self) -> Optional[Fraction]:
        return None if self.end is None else abs(self.end - self.start)

    def param_at(self, s: Fraction) -> Fraction:
        if self.end is None or self.end >= self.start:
            return self.start + s
        return self.start - s


@dataclass(frozen=True)
class BoundaryArcLeg:
    """Arc along the boundary circle r = 1, from angle t0, signed direction."""

    t0: float
    direction: int  # +1 or -1
    length: Optional[float]  # None: unbounded

    def angle_at(self, s: float) -> float:
        return self.t0 + self.direction * s

    def angle_interval(self) -> tuple[float, float]:
        if self.length is None:
            if self.direction > 0:
                return (self.t0, math.inf)
            return (-math.inf, self.t0)
        t1 = self.angle_at(self.length)
        return (min(self.t0, t1), max(self.t0, t1))


@dataclass(frozen=True)
class ChordLeg:
    """Straight segment between cover points (t, r); must avoid the open disk."""

    a: tuple[float, float]
    b: tuple[float, float]

    def __post_init__(self):
        if abs(self.b[0] - self.a[0]) >= math.pi:
            raise DomainError("chord legs must span less than a half turn")

    @property
    def length(self) -> float:
        ax, ay, bx, by = self._developed()
        return math.hypot(bx - ax, by - ay)

    def _developed(self) -> tuple[float, float, float, float]:
        # develop with `a` on the positive x-axis; valid because |dt| < pi
        dt = self.b[0] - self.a[0]
        return self.a[1], 0.0, self.b[1] * math.cos(dt), self.b[1] * math.sin(dt)

    def coords_at(self, s: float) -> tuple[float, float]:
        ax, ay, bx, by = self._developed()
        ell = math.hypot(bx - ax, by - ay)
        f = 0.0 if ell == 0 else s / ell
        x, y = ax + f * (bx - ax), ay + f * (by - ay)
        return self.a[0] + math.atan2(y, x), math.hypot(x, y)


@dataclass(frozen=True)
class AttachedLeg:
    """Tail running up an attached ray from its base (s = 0)."""

    ray_id: str
    length: Optional[float] = None  # None in practice


Leg = Union[EdgeLeg, BoundaryArcLeg, ChordLeg, AttachedLeg]


@dataclass(frozen=True, eq=False)
class UnitSpeedRay:
    """Unit-speed geodesic ray in a host space, with a label for reports."""

    space: object
    label: str
    legs: tuple[Leg, ...]

    def __post_init__(self):
        for leg in self.legs[:-1]:
            if leg.length is None:
                raise DomainError("only the final leg of a ray may be unbounded")

    def leg_offsets(self):
        """Global arc-length offset at which each leg starts."""
        offs = [0]
        for leg in self.legs[:-1]:
            offs.append(offs[-1] + leg.length)
        return offs

    def locate(self, t):
        """(leg, local arc length) containing global parameter t >= 0."""
        if t < 0:
            raise DomainError(f"ray parameter must be nonnegative, got {t}")
        offs = self.leg_offsets()
        for leg, off in zip(self.legs[:-1], offs[:-1]):
            if t <= off + leg.length:
                return leg, t - off
        last = self.legs[-1]
        s = t - offs[-1]
        if last.length is not None and s > last.length:
            raise DomainError(f"parameter {t} beyond end of finite ray")
        return last, s

    def eval(self, t) -> Point:
        leg, s = self.locate(t)
        sid = self.space.space_id
        if isinstance(leg, EdgeLeg):
            return RayComplexPoint(sid, leg.edge_id, leg.param_at(Fraction(s)))
        if isinstance(leg, BoundaryArcLeg):
            return AnnulusPoint(sid, leg.angle_at(float(s)), 1.0)
        if isinstance(leg, ChordLeg):
            tt, rr = leg.coords_at(float(s))
            return AnnulusPoint(sid, tt, max(rr, 1.0))
        return AttachedRayPoint(sid, leg.ray_id, float(s))

    @property
    def basepoint(self) -> Point:
        return self.eval(0)

    @property
    def total_length(self):
        return None if self.legs[-1].length is None else (
            self.leg_offsets()[-1] + self.legs[-1].length
        )

    def __repr__(self):
        return f"UnitSpeedRay({self.label!r}, {len(self.legs)} legs)"
