"""boundary-lab: exact and numerical machinery for contracting rays,
Gromov products, and boundary topology on two families of geodesic spaces:
complexes glued from rays, and the unrolled plane-minus-disk with attached
rays."""

from .annulus import (
    AnnulusSpace,
    SpiralMap,
    ann_distance,
    ann_distance_coords,
    ann_distance_with_rays,
    log_spiral_map,
    spiral_coords,
)
from .boundary import (
    BoundaryPoint,
    BoundaryProductEstimate,
    boundary_gromov_product,
    boundary_map_continuity_test,
    converges_in_gp,
    hausdorff_violation_witness,
    u_set_membership,
)
from .contraction import (
    ContractionProfile,
    EscapeTime,
    asymptotic_check,
    claim_check,
    contraction_profile,
    git_check,
    morse_witness,
    neighborhood_basis_check,
    project,
    ray_distance,
    strong_contraction_constant,
    t_first_escape,
)
from .dsl import compile_space, load_space, parse_space, serialize_space
from .distortion import qi_distortion_estimate
from .errors import (
    BoundaryLabError,
    BuildError,
    DomainError,
    HorizonError,
    SpaceParseError,
    UnreachableError,
)
from .mesh_oracle import mesh_oracle_distance
from .metric import gromov_product, metric_axiom_check
from .points import AnnulusPoint, AttachedRayPoint, PathPolyline, RayComplexPoint
from .ray_complex import GeodesicResult, RayComplex
from .rays import UnitSpeedRay
from .spacezoo import ZooSpace, build_X, build_Xcat0, build_Y, build_Ycat0, get_space

def rc_distance(p, q, complex_):
    """Exact shortest-path distance in a ray complex."""
    return complex_.distance(p, q)


def rc_geodesic(p, q, complex_):
    """Exact distance plus a witness polyline."""
    return complex_.geodesic(p, q)


def rc_ray(label, complex_):
    """Unit-speed ray along an unbounded edge from its glued origin."""
    return complex_.edge_ray(label)


__all__ = [name for name in dir() if not name.startswith("_")]
