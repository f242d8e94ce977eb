"""Constructors for the four example spaces, with boundary registries.

Each builder returns a ZooSpace bundle: the space itself, a labeled
boundary registry whose canonical representatives are unit-speed geodesic
rays based at the basepoint o, auxiliary representatives where the space
offers them (a second route in the glued complexes, a slightly offset base
in the annulus), and recommended horizons derived from the construction
scale (never less than twice the largest scale).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .annulus import AnnulusSpace, geodesic_legs
from .boundary import BoundaryPoint
from .errors import BuildError, DomainError
from .ray_complex import RAY, SEGMENT, Edge, RayComplex
from .rays import AttachedLeg, BoundaryArcLeg, EdgeLeg, UnitSpeedRay


@dataclass(eq=False)
class ZooSpace:
    name: str
    space: Union[RayComplex, AnnulusSpace]
    boundary: dict[str, BoundaryPoint]
    scale: float
    product_horizon: float
    sweep_horizon: float
    gamma_indices: tuple[int, ...] = ()
    c_table_cache: dict = field(default_factory=dict)

    @property
    def space_id(self) -> str:
        return self.space.space_id

    @property
    def product_min_horizon(self) -> float:
        """Window minima below the construction scale can sit on plateaus,
        so product schedules must pass this before stability counts."""
        return 4 * self.scale

    def gamma_labels(self) -> list[str]:
        return [f"g{i}" for i in self.gamma_indices]

    def boundary_points(self) -> list[BoundaryPoint]:
        return list(self.boundary.values())


def _two(i: int) -> Fraction:
    return Fraction(2) ** i


def build_X(n: int) -> ZooSpace:
    """Two boundary rays glued at o, plus n branch rays hung off both by
    connectors of length 2^i."""
    if n < 1:
        raise DomainError("n must be >= 1")
    edges = [Edge("alpha", RAY, None), Edge("beta", RAY, None)]
    gluings = [(("alpha", Fraction(0)), ("beta", Fraction(0)))]
    for i in range(1, n + 1):
        edges.append(Edge(f"g{i}", RAY, None))
        edges.append(Edge(f"ca{i}", SEGMENT, _two(i)))
        edges.append(Edge(f"cb{i}", SEGMENT, _two(i)))
        gluings += [
            ((f"ca{i}", Fraction(0)), (f"g{i}", Fraction(0))),
            ((f"ca{i}", _two(i)), ("alpha", Fraction(i))),
            ((f"cb{i}", Fraction(0)), (f"g{i}", Fraction(0))),
            ((f"cb{i}", _two(i)), ("beta", Fraction(i))),
        ]
    rc = RayComplex(edges, gluings, ("alpha", Fraction(0)))
    boundary = {
        "alpha": BoundaryPoint("alpha", rc.edge_ray("alpha")),
        "beta": BoundaryPoint("beta", rc.edge_ray("beta")),
    }
    for i in range(1, n + 1):
        via_a = UnitSpeedRay(
            rc,
            f"g{i}",
            (
                EdgeLeg("alpha", Fraction(0), Fraction(i)),
                EdgeLeg(f"ca{i}", _two(i), Fraction(0)),
                EdgeLeg(f"g{i}", Fraction(0), None),
            ),
        )
        via_b = UnitSpeedRay(
            rc,
            f"g{i}~beta",
            (
                EdgeLeg("beta", Fraction(0), Fraction(i)),
                EdgeLeg(f"cb{i}", _two(i), Fraction(0)),
                EdgeLeg(f"g{i}", Fraction(0), None),
            ),
        )
        boundary[f"g{i}"] = BoundaryPoint(f"g{i}", via_a, (via_b,))
    scale = float(2 ** n)
    return ZooSpace(
        f"X:{n}", rc, boundary, scale, 16 * scale, 8 * scale,
        tuple(range(1, n + 1)),
    )


def build_Y(n: int, start: int = 3) -> ZooSpace:
    """The re-metrized complex: the connector to the second boundary ray is
    shortened to 2^i - 2i.  Indices whose shortened length would be
    nonpositive are rejected; the family therefore starts at 3 by default
    (2^1 - 2 = 0 degenerates)."""
    if n < start:
        raise DomainError(f"n must be >= {start}")
    edges = [Edge("alpha", RAY, None), Edge("beta", RAY, None)]
    gluings = [(("alpha", Fraction(0)), ("beta", Fraction(0)))]
    for i in range(start, n + 1):
        short = _two(i) - 2 * i
        if short <= 0:
            raise BuildError(
                f"connector to beta for index {i} has nonpositive length {short}"
            )
        edges.append(Edge(f"g{i}", RAY, None))
        edges.append(Edge(f"ca{i}", SEGMENT, _two(i)))
        edges.append(Edge(f"cb{i}", SEGMENT, short))
        gluings += [
            ((f"ca{i}", Fraction(0)), (f"g{i}", Fraction(0))),
            ((f"ca{i}", _two(i)), ("alpha", Fraction(i))),
            ((f"cb{i}", Fraction(0)), (f"g{i}", Fraction(0))),
            ((f"cb{i}", short), ("beta", Fraction(i))),
        ]
    rc = RayComplex(edges, gluings, ("alpha", Fraction(0)))
    boundary = {
        "alpha": BoundaryPoint("alpha", rc.edge_ray("alpha")),
        "beta": BoundaryPoint("beta", rc.edge_ray("beta")),
    }
    for i in range(start, n + 1):
        short = _two(i) - 2 * i
        via_b = UnitSpeedRay(
            rc,
            f"g{i}",
            (
                EdgeLeg("beta", Fraction(0), Fraction(i)),
                EdgeLeg(f"cb{i}", short, Fraction(0)),
                EdgeLeg(f"g{i}", Fraction(0), None),
            ),
        )
        boundary[f"g{i}"] = BoundaryPoint(f"g{i}", via_b)
    scale = float(2 ** n)
    return ZooSpace(
        f"Y:{n}", rc, boundary, scale, 16 * scale, 8 * scale,
        tuple(range(start, n + 1)),
    )


def _attached_class(
    space: AnnulusSpace, label: str, ray_id: str, bases: list[tuple[float, float]]
) -> BoundaryPoint:
    reps = []
    for k, start in enumerate(bases):
        legs = tuple(geodesic_legs(start, space.attached[ray_id])) + (
            AttachedLeg(ray_id),
        )
        reps.append(UnitSpeedRay(space, label if k == 0 else f"{label}~{k}", legs))
    return BoundaryPoint(label, reps[0], tuple(reps[1:]))


def _boundary_class(
    space: AnnulusSpace, label: str, direction: int, offset: float
) -> BoundaryPoint:
    canonical = UnitSpeedRay(
        space, label, (BoundaryArcLeg(0.0, direction, None),)
    )
    perturbed = UnitSpeedRay(
        space,
        f"{label}~1",
        (BoundaryArcLeg(direction * offset, direction, None),),
    )
    return BoundaryPoint(label, canonical, (perturbed,))


_PERTURB = 0.5  # base offset of auxiliary annulus representatives


def build_Xcat0(n: int) -> ZooSpace:
    """Annulus with rays attached along the spiral of bases (i, 2^i)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    space = AnnulusSpace({f"g{i}": (float(i), float(2 ** i)) for i in range(1, n + 1)})
    boundary = {
        "alpha": _boundary_class(space, "alpha", +1, _PERTURB),
        "beta": _boundary_class(space, "beta", -1, _PERTURB),
    }
    for i in range(1, n + 1):
        boundary[f"g{i}"] = _attached_class(
            space, f"g{i}", f"g{i}", [(0.0, 1.0), (_PERTURB, 1.0)]
        )
    scale = float(2 ** n)
    return ZooSpace(
        f"Xcat0:{n}", space, boundary, scale, 32 * scale, 8 * scale,
        tuple(range(1, n + 1)),
    )


def build_Ycat0(n: int) -> ZooSpace:
    """Annulus with rays attached along the vertical of bases (0, 2^i)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    space = AnnulusSpace({f"g{i}": (0.0, float(2 ** i)) for i in range(1, n + 1)})
    boundary = {
        "alpha": _boundary_class(space, "alpha", +1, _PERTURB),
        "beta": _boundary_class(space, "beta", -1, _PERTURB),
    }
    for i in range(1, n + 1):
        boundary[f"g{i}"] = _attached_class(
            space, f"g{i}", f"g{i}", [(0.0, 1.0), (_PERTURB, 1.0)]
        )
    scale = float(2 ** n)
    return ZooSpace(
        f"Ycat0:{n}", space, boundary, scale, 32 * scale, 8 * scale,
        tuple(range(1, n + 1)),
    )


_BUILDERS = {
    "X": build_X,
    "Y": build_Y,
    "Xcat0": build_Xcat0,
    "Ycat0": build_Ycat0,
}


def get_space(spec: str) -> ZooSpace:
    """Resolve a builtin spec like ``X:16`` or a path to a .space file."""
    if spec.endswith(".space"):
        from .dsl import load_space

        rc = load_space(spec)
        return ZooSpace(spec, rc, {}, 1.0, 1024.0, 512.0, ())
    if ":" in spec:
        name, _, num = spec.partition(":")
        if name in _BUILDERS:
            return _BUILDERS[name](int(num))
    raise DomainError(
        f"unknown space spec {spec!r} (use X:<n>, Y:<n>, Xcat0:<n>, Ycat0:<n>,"
        " or a .space path)"
    )
