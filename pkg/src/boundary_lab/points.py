"""Point variants and polyline paths.

Every point carries the identity (``space_id``) of the space it lives in;
operations mixing points from different spaces are rejected rather than
coerced.  Ray-complex coordinates are exact rationals, annulus coordinates
are floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import DomainError

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class RayComplexPoint:
    """A location on one edge of a ray complex: 0 <= offset <= edge length."""

    space_id: str
    edge_id: str
    offset: Fraction

    def __post_init__(self):
        if self.offset < 0:
            raise DomainError(f"negative offset {self.offset} on edge {self.edge_id}")

    def __repr__(self):
        return f"{self.edge_id}:{self.offset}"


@dataclass(frozen=True)
class AnnulusPoint:
    """A location (t, r) on the unrolled plane-minus-disk, r >= 1.

    The angle coordinate t is unbounded: the space is the universal cover,
    no mod-2pi reduction is ever applied.
    """

    space_id: str
    t: float
    r: float

    def __post_init__(self):
        if not self.r >= 1.0:
            raise DomainError(f"annulus point needs r >= 1, got r={self.r}")

    def __repr__(self):
        return f"({self.t:.6g},{self.r:.6g})"


@dataclass(frozen=True)
class AttachedRayPoint:
    """A location at arc length s >= 0 along an attached ray."""

    space_id: str
    ray_id: str
    s: float

    def __post_init__(self):
        if not self.s >= 0.0:
            raise DomainError(f"attached-ray point needs s >= 0, got s={self.s}")

    def __repr__(self):
        return f"{self.ray_id}+{self.s:.6g}"


Point = Union[RayComplexPoint, AnnulusPoint, AttachedRayPoint]


def require_same_space(space_id: str, *points: Point) -> None:
    for p in points:
        if p.space_id != space_id:
            raise DomainError(
                f"point {p!r} belongs to space {p.space_id}, not {space_id}"
            )


@dataclass(frozen=True)
class PathPolyline:
    """An ordered chain of points with cumulative arc length.

    Consecutive points are understood to be joined by geodesic pieces, so
    cumulative[k+1] - cumulative[k] equals the distance between the points.
    Lengths are exact rationals in ray complexes, floats otherwise.
    """

    points: tuple[Point, ...]
    cumulative: tuple[Union[Fraction, float], ...] = field(default=())

    @staticmethod
    def from_points(points: Sequence[Point], space) -> "PathPolyline":
        """Build a polyline, measuring each consecutive hop with ``space``."""
        pts = tuple(points)
        if not pts:
            raise DomainError("polyline needs at least one point")
        cum = [space.distance(pts[0], pts[0])]  # exact zero of the right type
        for a, b in zip(pts, pts[1:]):
            cum.append(cum[-1] + space.distance(a, b))
        return PathPolyline(pts, tuple(cum))

    @property
    def length(self):
        return self.cumulative[-1]

    def check(self, space, tol=0) -> None:
        """Verify the cumulative-length invariant against ``space``."""
        for i, (a, b) in enumerate(zip(self.points, self.points[1:])):
            step = self.cumulative[i + 1] - self.cumulative[i]
            if step < 0:
                raise DomainError("cumulative length decreases")
            err = abs(step - space.distance(a, b))
            if err > tol:
                raise DomainError(f"polyline hop {i} off by {err}")
