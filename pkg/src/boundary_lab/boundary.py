"""Boundary points, extended Gromov products, U(eta, r) membership,
convergence diagnostics, and continuity tests for induced boundary maps.

The extended product of two boundary classes is estimated from their
canonical representatives: E(S) is the minimum finite-scale product over a
grid in [S, 2S]^2, and S doubles until the last two increments fall within
tolerance.  On ray complexes the products are eventually constant, so the
doubling terminates with the exact value.  The supremum over other
representatives is not searched; when a contraction constant is known the
50C bound is attached as the error bar instead, and the self-product is
+infinity by convention (so eta always belongs to U(eta, r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import DomainError
from .metric import gromov_product
from .ray_complex import RayComplex
from .rays import UnitSpeedRay


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A labeled asymptoty class with a canonical o-based representative."""

    label: str
    canonical: UnitSpeedRay
    auxiliaries: tuple[UnitSpeedRay, ...] = ()

    @property
    def space_id(self) -> str:
        return self.canonical.space.space_id

    def representatives(self) -> tuple[UnitSpeedRay, ...]:
        return (self.canonical,) + self.auxiliaries

    def __repr__(self):
        return f"BoundaryPoint({self.label!r})"


@dataclass(frozen=True)
class BoundaryProductEstimate:
    value: float
    schedule: tuple  # horizons S tried
    window_minima: tuple  # E(S) per horizon
    status: str  # "converged" | "inconclusive"
    error_bar: Optional[float] = None  # 50C when the constant is known

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def _canonical(x: Union[BoundaryPoint, UnitSpeedRay]) -> UnitSpeedRay:
    return x.canonical if isinstance(x, BoundaryPoint) else x


def boundary_gromov_product(
    eta: Union[BoundaryPoint, UnitSpeedRay],
    zeta: Union[BoundaryPoint, UnitSpeedRay],
    space=None,
    tol=1e-6,
    max_horizon=None,
    min_horizon=0,
    c_eta=None,
    grid: int = 3,
) -> BoundaryProductEstimate:
    """Window-minimum estimate of the extended Gromov product.

    Stability of the window minima only counts once the schedule has passed
    ``min_horizon``: finite-scale products can sit on a long plateau below
    the construction scale before reaching their limiting value, so callers
    should keep min_horizon at or above the largest scale of the space.
    """
    a, b = _canonical(eta), _canonical(zeta)
    if space is None:
        space = a.space
    if a.space.space_id != b.space.space_id:
        raise DomainError("boundary points live in different spaces")
    if max_horizon is None:
        raise DomainError("max_horizon is a required argument")
    label_a = eta.label if isinstance(eta, BoundaryPoint) else a.label
    label_b = zeta.label if isinstance(zeta, BoundaryPoint) else b.label
    if a is b or label_a == label_b:
        return BoundaryProductEstimate(
            math.inf, (), (), "converged",
            None if c_eta is None else 50.0 * float(c_eta),
        )

    exact = isinstance(space, RayComplex)
    o = space.basepoint
    S = Fraction(1) if exact else 1.0
    schedule = []
    minima = []
    eff_tol = 0 if exact else tol
    while True:
        params = [S + (S * k) / (grid - 1) for k in range(grid)] if grid > 1 else [S]
        window_min = _window_min(space, a, b, params, o, exact)
        schedule.append(S)
        minima.append(window_min)
        if len(minima) >= 3 and S >= min_horizon:
            d1 = abs(minima[-1] - minima[-2])
            d2 = abs(minima[-2] - minima[-3])
            if d1 <= eff_tol and d2 <= eff_tol:
                return BoundaryProductEstimate(
                    float(minima[-1]),
                    tuple(float(s) for s in schedule),
                    tuple(float(m) for m in minima),
                    "converged",
                    None if c_eta is None else 50.0 * float(c_eta),
                )
        if 2 * S > max_horizon:
            return BoundaryProductEstimate(
                float(minima[-1]),
                tuple(float(s) for s in schedule),
                tuple(float(m) for m in minima),
                "inconclusive",
                None if c_eta is None else 50.0 * float(c_eta),
            )
        S = 2 * S


def _window_min(space, a, b, params, o, exact):
    """Min of finite-scale products over the window grid.

    Ray complexes share one single-source table per grid row and a cached
    basepoint table, so a 3x3 window costs three Dijkstra runs, not 27.
    """
    window_min = None
    if exact:
        ys = [b.eval(t) for t in params]
        dyo = [space.base_distance(y) for y in ys]
        for s in params:
            x = a.eval(s)
            tx = space.vertex_distances(x)
            dxo = space.point_distance_from_table(tx, x, o)
            for y, d_yo in zip(ys, dyo):
                gp = (dxo + d_yo - space.point_distance_from_table(tx, x, y)) / 2
                if window_min is None or gp < window_min:
                    window_min = gp
        return window_min
    for s in params:
        pa = a.eval(s)
        for t in params:
            gp = gromov_product(pa, b.eval(t), o, space)
            if window_min is None or gp < window_min:
                window_min = gp
    return window_min


@dataclass(frozen=True)
class MembershipVerdict:
    state: str  # "in" | "out" | "boundary-inconclusive"
    estimate: BoundaryProductEstimate

    def __bool__(self):
        return self.state == "in"


def u_set_membership(
    zeta: BoundaryPoint,
    eta: BoundaryPoint,
    r: float,
    tol=None,
    max_horizon=None,
    min_horizon=0,
    estimate: Optional[BoundaryProductEstimate] = None,
) -> MembershipVerdict:
    """Is zeta in U(eta, r) = {xi : (eta.xi) >= r}?

    With tol = 0 (exact spaces) the comparison is sharp; otherwise values
    within tol of the threshold come back boundary-inconclusive.
    """
    if estimate is None:
        estimate = boundary_gromov_product(
            eta, zeta, tol=tol if tol else 1e-6, max_horizon=max_horizon,
            min_horizon=min_horizon,
        )
    if tol is None:
        tol = 0 if isinstance(_canonical(eta).space, RayComplex) else 1e-6
    if not estimate.converged:
        return MembershipVerdict("boundary-inconclusive", estimate)
    if tol == 0:
        return MembershipVerdict("in" if estimate.value >= r else "out", estimate)
    if estimate.value >= r + tol:
        return MembershipVerdict("in", estimate)
    if estimate.value < r - tol:
        return MembershipVerdict("out", estimate)
    return MembershipVerdict("boundary-inconclusive", estimate)


@dataclass(frozen=True)
class ConvergenceReport:
    eta: str
    sequence: tuple  # labels in order
    rows: tuple  # (r, first_stable_index or None, memberships per term)
    converges: bool  # at every tested radius

    def first_index(self, r) -> Optional[int]:
        for rr, idx, _ in self.rows:
            if rr == r:
                return idx
        raise DomainError(f"radius {r} not in tested schedule")


def converges_in_gp(
    sequence: Sequence[BoundaryPoint],
    eta: BoundaryPoint,
    r_schedule: Sequence[float],
    tol=None,
    max_horizon=None,
    min_horizon=0,
) -> ConvergenceReport:
    """For each r, the first index past which every tested term is in
    U(eta, r); the verdict only speaks for the tested radii and indices."""
    estimates = [
        boundary_gromov_product(
            eta, term, tol=tol if tol else 1e-6, max_horizon=max_horizon,
            min_horizon=min_horizon,
        )
        for term in sequence
    ]
    rows = []
    all_ok = True
    for r in r_schedule:
        states = []
        for term, est in zip(sequence, estimates):
            states.append(
                u_set_membership(term, eta, r, tol=tol, estimate=est).state
            )
        first = None
        for i in range(len(states)):
            if all(s == "in" for s in states[i:]):
                first = i + 1  # 1-based index into the sequence
                break
        rows.append((float(r), first, tuple(states)))
        if first is None:
            all_ok = False
    return ConvergenceReport(
        eta.label, tuple(bp.label for bp in sequence), tuple(rows), all_ok
    )


def hausdorff_violation_witness(
    boundary: Sequence[BoundaryPoint],
    sequence: Sequence[BoundaryPoint],
    r_schedule: Sequence[float],
    tol=None,
    max_horizon=None,
    min_horizon=0,
) -> Optional[tuple[BoundaryPoint, BoundaryPoint]]:
    """Two distinct limits of the same sequence, if the topology offers them."""
    limits = []
    for eta in boundary:
        rep = converges_in_gp(sequence, eta, r_schedule, tol, max_horizon, min_horizon)
        if rep.converges:
            limits.append(eta)
    if len(limits) >= 2:
        return limits[0], limits[1]
    return None


@dataclass(frozen=True)
class ContinuityCertificate:
    eta: str
    image_eta: str
    r: float
    verdict: str  # "discontinuous" | "continuous-at-tested-data" | "inconclusive"
    upstream: ConvergenceReport
    image_products: tuple  # (label, product value) per sequence term
    outside_indices: tuple
    space_from: str
    space_to: str
    upstream_schedule: tuple

    @property
    def discontinuous(self) -> bool:
        return self.verdict == "discontinuous"


def boundary_map_continuity_test(
    correspondence: Optional[dict],
    bundle_from,
    bundle_to,
    sequence_labels: Sequence[str],
    eta_label: str,
    r: float,
    upstream_schedule: Sequence[float] = (1.0, 2.0, 4.0),
    tol=None,
    max_horizon_from=None,
    max_horizon_to=None,
    min_horizon_from=0,
    min_horizon_to=0,
) -> ContinuityCertificate:
    """Test continuity of a label bijection at one boundary point.

    Discontinuity certificate: the sequence converges to eta upstream, yet
    arbitrarily late tested image terms stay outside U(image(eta), r).
    """
    pairing = correspondence or {}

    def image(label: str) -> str:
        return pairing.get(label, label)

    eta_from = bundle_from.boundary[eta_label]
    eta_to = bundle_to.boundary[image(eta_label)]
    seq_from = [bundle_from.boundary[lab] for lab in sequence_labels]
    seq_to = [bundle_to.boundary[image(lab)] for lab in sequence_labels]

    upstream = converges_in_gp(
        seq_from, eta_from, upstream_schedule, tol=tol,
        max_horizon=max_horizon_from, min_horizon=min_horizon_from,
    )
    image_products = []
    outside = []
    inconclusive = False
    for i, term in enumerate(seq_to):
        verdict = u_set_membership(
            term, eta_to, r, tol=tol, max_horizon=max_horizon_to,
            min_horizon=min_horizon_to,
        )
        image_products.append((term.label, verdict.estimate.value))
        if verdict.state == "boundary-inconclusive":
            inconclusive = True
        elif verdict.state == "out":
            outside.append(i + 1)

    if not upstream.converges or inconclusive:
        verdict_str = "inconclusive"
    else:
        # outside terms keep appearing among the latest tested indices
        tail = len(seq_to) // 2
        if outside and any(i > tail for i in outside):
            verdict_str = "discontinuous"
        else:
            verdict_str = "continuous-at-tested-data"
    return ContinuityCertificate(
        eta_label,
        image(eta_label),
        float(r),
        verdict_str,
        upstream,
        tuple(image_products),
        tuple(outside),
        bundle_from.space.space_id,
        bundle_to.space.space_id,
        tuple(float(x) for x in upstream_schedule),
    )
