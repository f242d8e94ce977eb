"""Closest-point projections onto rays and everything built on them:
contraction profiles, strong-contraction constants, the geodesic-image
property check, asymptoty tests, escape times, residual checks for the
product-vs-escape-time comparison, and the neighborhood-basis condition.

Projections are set-valued and returned as maximal parameter intervals;
ties (a point projecting to two far-apart feet) are reported as separate
intervals, never collapsed.  Ray complexes use exact arithmetic (tol 0),
the annulus uses floats with a default tolerance of 1e-6.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .annulus import AnnulusSpace, ann_distance_arrays, ann_distance_coords
from .errors import DomainError, HorizonError
from .metric import gromov_product
from .points import AttachedRayPoint, PathPolyline, Point, RayComplexPoint
from .ray_complex import RayComplex
from .rays import AttachedLeg, BoundaryArcLeg, ChordLeg, EdgeLeg, UnitSpeedRay

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# -- distance from a point to a ray -----------------------------------------

def _min_on_chord_leg(leg: ChordLeg, cx: tuple[float, float]) -> tuple[float, float]:
    """(distance, local argmin) of the convex distance profile along a chord."""
    lo, hi = 0.0, leg.length
    for _ in range(64):
        m1 = hi - GOLDEN * (hi - lo)
        m2 = lo + GOLDEN * (hi - lo)
        if ann_distance_coords(*cx, *leg.coords_at(m1)) <= ann_distance_coords(
            *cx, *leg.coords_at(m2)
        ):
            hi = m2
        else:
            lo = m1
    s = 0.5 * (lo + hi)
    return ann_distance_coords(*cx, *leg.coords_at(s)), s


def _annulus_leg_distance(
    space: AnnulusSpace, leg, cx: tuple[float, float], wedge: float
) -> tuple[float, float]:
    """(distance, local argmin) from annulus coordinates cx (+wedge) to a leg."""
    if isinstance(leg, BoundaryArcLeg):
        lo, hi = leg.angle_interval()
        foot = min(max(cx[0], lo), hi)
        return wedge + ann_distance_coords(*cx, foot, 1.0), abs(foot - leg.t0)
    if isinstance(leg, ChordLeg):
        d, s = _min_on_chord_leg(leg, cx)
        return wedge + d, s
    if isinstance(leg, AttachedLeg):
        base = space.attached[leg.ray_id]
        return wedge + ann_distance_coords(*cx, *base), 0.0
    raise DomainError(f"unsupported leg {leg!r} in annulus space")


def ray_distance(x: Point, ray: UnitSpeedRay, horizon=None):
    """(distance from x to the ray, global argmin parameters).

    Exact in ray complexes; closed-form/convex-search in the annulus.
    Raises HorizonError when every minimizer sits at or beyond the horizon.
    """
    space = ray.space
    if isinstance(space, RayComplex):
        d, params = _rc_ray_distance(space, x, ray)
    elif isinstance(space, AnnulusSpace):
        d, params = _annulus_ray_distance(space, x, ray)
    else:
        raise DomainError(f"unsupported space {space!r}")
    if horizon is not None and all(p >= horizon for p in params):
        raise HorizonError(
            f"projection minimizer at parameter {min(params)} >= horizon {horizon}"
        )
    return d, params


def _rc_ray_distance(space: RayComplex, x: RayComplexPoint, ray: UnitSpeedRay):
    table = space.vertex_distances(x)
    offsets = ray.leg_offsets()
    best: Optional[Fraction] = None
    hits: list = []
    for leg, g0 in zip(ray.legs, offsets):
        if not isinstance(leg, EdgeLeg):
            raise DomainError("ray-complex rays must consist of edge legs")
        if leg.end is None:
            lo, hi = leg.start, None
        else:
            lo, hi = min(leg.start, leg.end), max(leg.start, leg.end)
        cands = {leg.start}
        if leg.end is not None:
            cands.add(leg.end)
        for m in space.marks_on(leg.edge_id):
            if m >= lo and (hi is None or m <= hi):
                cands.add(m)
        if x.edge_id == leg.edge_id and x.offset >= lo and (hi is None or x.offset <= hi):
            cands.add(x.offset)
        for par in cands:
            pt = RayComplexPoint(space.space_id, leg.edge_id, par)
            d = space.point_distance_from_table(table, x, pt)
            g = g0 + abs(par - leg.start)
            if best is None or d < best:
                best, hits = d, [g]
            elif d == best:
                hits.append(g)
    return best, sorted(set(hits))


def _annulus_ray_distance(space: AnnulusSpace, x: Point, ray: UnitSpeedRay):
    offsets = ray.leg_offsets()
    if isinstance(x, AttachedRayPoint):
        for leg, g0 in zip(ray.legs, offsets):
            if isinstance(leg, AttachedLeg) and leg.ray_id == x.ray_id:
                return 0.0, [g0 + x.s]
        cx, wedge = space.attached[x.ray_id], x.s
    else:
        cx, wedge = (x.t, x.r), 0.0
    best = math.inf
    hits: list = []
    for leg, g0 in zip(ray.legs, offsets):
        d, s = _annulus_leg_distance(space, leg, cx, wedge)
        g = g0 + s
        if d < best - 1e-12:
            best, hits = d, [g]
        elif d <= best + 1e-12:
            hits.append(g)
    return best, sorted(hits)


def ray_distance_profile(ray_from: UnitSpeedRay, ray_to: UnitSpeedRay, ts):
    """Distances d(ray_from(t), ray_to) over a grid of parameters t.

    Vectorized over the annulus kernel when both rays live there; scalar
    exact loop in ray complexes.
    """
    space = ray_to.space
    if isinstance(space, AnnulusSpace) and isinstance(ray_from.space, AnnulusSpace):
        return _annulus_profile(space, ray_from, ray_to, np.asarray(ts, dtype=float))
    return [ray_distance(ray_from.eval(t), ray_to, None)[0] for t in ts]


def _annulus_profile(space, ray_from, ray_to, ts: np.ndarray) -> np.ndarray:
    n = len(ts)
    t_arr = np.empty(n)
    r_arr = np.empty(n)
    wedge = np.zeros(n)
    on_target = np.zeros(n, dtype=bool)
    target_attached = {
        leg.ray_id for leg in ray_to.legs if isinstance(leg, AttachedLeg)
    }
    for k, t in enumerate(ts):
        p = ray_from.eval(float(t))
        if isinstance(p, AttachedRayPoint):
            if p.ray_id in target_attached:
                on_target[k] = True
                t_arr[k], r_arr[k] = 0.0, 1.0
                continue
            base = space.attached[p.ray_id]
            t_arr[k], r_arr[k], wedge[k] = base[0], base[1], p.s
        else:
            t_arr[k], r_arr[k] = p.t, p.r
    best = np.full(n, np.inf)
    for leg in ray_to.legs:
        if isinstance(leg, BoundaryArcLeg):
            lo, hi = leg.angle_interval()
            foot = np.clip(t_arr, lo, hi)
            d = ann_distance_arrays(t_arr, r_arr, foot, 1.0)
        elif isinstance(leg, AttachedLeg):
            base = space.attached[leg.ray_id]
            d = ann_distance_arrays(t_arr, r_arr, base[0], base[1])
        elif isinstance(leg, ChordLeg):
            d = _chord_distances_vec(leg, t_arr, r_arr)
        else:
            raise DomainError(f"unsupported leg {leg!r}")
        best = np.minimum(best, d + wedge)
    best[on_target] = 0.0
    return best


def _chord_distances_vec(leg: ChordLeg, tx: np.ndarray, rx: np.ndarray) -> np.ndarray:
    ax, ay, bx, by = leg._developed()
    ell = max(math.hypot(bx - ax, by - ay), 1e-300)

    def g(u):
        f = u / ell
        px, py = ax + f * (bx - ax), ay + f * (by - ay)
        return ann_distance_arrays(
            tx, rx, leg.a[0] + np.arctan2(py, px), np.maximum(np.hypot(px, py), 1.0)
        )

    lo = np.zeros_like(tx)
    hi = np.full_like(tx, leg.length)
    for _ in range(48):
        m1 = hi - GOLDEN * (hi - lo)
        m2 = lo + GOLDEN * (hi - lo)
        take = g(m1) <= g(m2)
        hi = np.where(take, m2, hi)
        lo = np.where(take, lo, m1)
    return g(0.5 * (lo + hi))


# -- set-valued projection ---------------------------------------------------

@dataclass(frozen=True)
class ProjectionResult:
    """Projection of a point onto target rays, as parameter intervals."""

    distance: Union[Fraction, float]
    intervals: tuple  # of (ray, lo, hi), global ray parameters, lo <= hi

    def points(self) -> list[Point]:
        pts = []
        for ray, lo, hi in self.intervals:
            pts.append(ray.eval(lo))
            if hi != lo:
                pts.append(ray.eval(hi))
        return pts

    def diameter(self, space):
        pts = self.points()
        worst = 0
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                worst = max(worst, space.distance(a, b))
        return worst

    def parameter_span(self) -> tuple:
        los = [lo for _, lo, _ in self.intervals]
        his = [hi for _, _, hi in self.intervals]
        return min(los), max(his)


def project(
    x: Point,
    target: Union[UnitSpeedRay, Sequence[UnitSpeedRay]],
    horizon,
    tol=None,
) -> ProjectionResult:
    """All parameters realizing the distance from x to the target rays,
    within tol, as maximal intervals per ray."""
    rays = [target] if isinstance(target, UnitSpeedRay) else list(target)
    if not rays:
        raise DomainError("projection needs at least one target ray")
    space = rays[0].space
    exact = isinstance(space, RayComplex)
    if tol is None:
        tol = 0 if exact else 1e-6

    per_ray = [ray_distance(x, ray, horizon) for ray in rays]
    dmin = min(d for d, _ in per_ray)

    intervals = []
    for ray, (d, params) in zip(rays, per_ray):
        if d > dmin + tol:
            continue
        if exact:
            intervals += [(ray, g, g) for g in params if d <= dmin + tol]
        else:
            for g in params:
                lo, hi = _expand_level_set(space, x, ray, g, dmin + tol, horizon)
                intervals.append((ray, lo, hi))
    intervals = _merge_intervals(intervals, 0 if exact else 1e-9)
    return ProjectionResult(dmin, tuple(intervals))


def _expand_level_set(space, x, ray, g, threshold, horizon):
    """Maximal parameter interval around g where d(x, ray(t)) <= threshold."""

    def f(t):
        return space.distance(x, ray.eval(t))

    lo = _level_edge(f, g, 0.0, threshold, horizon)
    hi = _level_edge(f, g, horizon, threshold, horizon)
    return min(lo, g), max(hi, g)


def _level_edge(f, start, toward, threshold, horizon):
    """Last parameter in direction `toward` still inside {f <= threshold}."""
    step = max(1e-9, horizon * 1e-7)
    cur = start
    while cur != toward:
        trial = min(cur + step, toward) if toward > cur else max(cur - step, toward)
        if f(trial) <= threshold:
            cur = trial
            step *= 2
        else:
            # bisect the crossing between cur (inside) and trial (outside)
            a, b = cur, trial
            for _ in range(60):
                m = 0.5 * (a + b)
                if f(m) <= threshold:
                    a = m
                else:
                    b = m
            return a
    return cur


def _merge_intervals(intervals, gap):
    by_ray: dict = {}
    for ray, lo, hi in intervals:
        by_ray.setdefault(id(ray), (ray, []))[1].append((lo, hi))
    out = []
    for ray, ivs in by_ray.values():
        ivs.sort()
        merged = [list(ivs[0])]
        for lo, hi in ivs[1:]:
            if lo <= merged[-1][1] + gap:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        out += [(ray, lo, hi) for lo, hi in merged]
    return out


# -- contraction profiles -----------------------------------------------------

@dataclass
class ContractionProfile:
    """Empirical map (radius bucket -> max joint projection diameter).

    Buckets are dyadic: bucket k covers distances in [2^k, 2^(k+1)).
    Classification ``bounded`` means the monotone envelope gained nothing
    over the last two occupied buckets; ``sublinear`` means the envelope
    to radius ratio decays along the occupied buckets; anything else is
    ``violated`` (or unstabilized, reported separately).
    """

    BOUNDED_DECAY = 0.55  # trailing/peak increment-window ratio: below saturates

    bins: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    samples: int = 0
    classification: str = "inconclusive"
    constant: Optional[float] = None
    growth_per_doubling: Optional[float] = None
    stabilized: bool = False

    def record(self, radius, diam, witness) -> None:
        if radius <= 0:
            return
        self.samples += 1
        k = math.floor(math.log2(radius))
        if k not in self.bins or diam > self.bins[k]:
            self.bins[k] = diam
            self.witnesses[k] = witness

    def merge(self, other: "ContractionProfile") -> "ContractionProfile":
        out = ContractionProfile()
        out.samples = self.samples + other.samples
        for src in (self, other):
            for k, v in src.bins.items():
                if k not in out.bins or v > out.bins[k]:
                    out.bins[k] = v
                    out.witnesses[k] = src.witnesses[k]
        out.classify()
        return out

    def envelope(self) -> list[tuple[int, float]]:
        """Monotone upper envelope over sorted buckets."""
        env = []
        running = 0
        for k in sorted(self.bins):
            running = max(running, self.bins[k])
            env.append((k, running))
        return env

    def value_at_radius(self, radius) -> Optional[float]:
        k = math.floor(math.log2(radius))
        return self.bins.get(k)

    def classify(self) -> str:
        """Bounded gauges saturate (per-doubling envelope increments decay),
        sublinear unbounded ones keep gaining while the value/radius ratio
        dies off; anything still gaining proportionally is violated."""
        env = self.envelope()
        if len(env) < 4:
            self.classification = "inconclusive"
            self.stabilized = False
            return self.classification
        values = [float(v) for _, v in env]
        incr = [b - a for a, b in zip(values, values[1:])]
        w = min(3, len(incr))
        means = [
            sum(incr[i:i + w]) / w for i in range(len(incr) - w + 1)
        ]
        peak, trail = max(means), means[-1]
        if peak <= 1e-12 or trail <= self.BOUNDED_DECAY * peak + 1e-12:
            self.classification = "bounded"
            self.constant = float(values[-1])
            self.stabilized = True
            return self.classification
        ratios = [v / (2.0 ** k) for k, v in env]
        if ratios[-1] < ratios[-2] < ratios[-3]:
            self.classification = "sublinear"
            ks = [k for k, _ in env[-4:]]
            vs = [v for _, v in env[-4:]]
            if ks[-1] != ks[0]:
                self.growth_per_doubling = float(vs[-1] - vs[0]) / (ks[-1] - ks[0])
            self.stabilized = True
            return self.classification
        self.classification = "violated"
        self.stabilized = False
        return self.classification

    def to_rows(self) -> list[dict]:
        rows = []
        for k in sorted(self.bins):
            x, y, diam = self.witnesses[k]
            rows.append(
                {
                    "bucket_log2": k,
                    "radius_lo": float(2.0 ** k),
                    "max_diam": float(self.bins[k]),
                    "witness_x": repr(x),
                    "witness_y": repr(y),
                }
            )
        return rows


def contraction_profile(
    gamma: UnitSpeedRay,
    space,
    sampler: Callable,
    n: int,
    horizon,
    seed: int = 0,
    extra_pairs: Sequence[tuple[Point, Point]] = (),
) -> ContractionProfile:
    """Sample admissible pairs and build the projection-diameter profile.

    The sampler proposes (x, y) candidates; pairs violating the admissibility
    condition d(x, y) <= d(x, gamma) are discarded, so the profile only ever
    reflects pairs the contraction condition quantifies over.  Explicitly
    constructed witness pairs can be injected through ``extra_pairs``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    rng = random.Random(seed)
    profile = ContractionProfile()
    recorded = 0
    attempts = 0
    queue = list(extra_pairs)
    while recorded < n + len(extra_pairs) and attempts < 40 * (n + 1):
        attempts += 1
        if queue:
            x, y = queue.pop(0)
            forced = True
        else:
            pair = sampler(rng)
            if pair is None:
                continue
            x, y = pair
            forced = False
        dxg, px = ray_distance(x, gamma, horizon)
        if space.distance(x, y) > dxg:
            if forced:
                raise DomainError("injected witness pair is not admissible")
            continue
        dyg, py = ray_distance(y, gamma, horizon)
        params = list(px) + list(py)
        diam = max(params) - min(params)
        profile.record(dxg, diam, (x, y, diam))
        recorded += 1
    profile.classify()
    return profile


@dataclass(frozen=True)
class StrongContractionResult:
    status: str  # "bounded" | "not_bounded" | "inconclusive"
    constant: Optional[float] = None
    witness: Optional[tuple] = None
    profile: Optional[ContractionProfile] = None


def strong_contraction_constant(
    gamma: UnitSpeedRay, space, sampler, n: int, horizon, seed: int = 0,
    extra_pairs=(),
) -> StrongContractionResult:
    """Bounded-gauge constant when the profile stabilizes bounded, or the
    failure certificate (a witness pair with large diameter at large radius)."""
    prof = contraction_profile(gamma, space, sampler, n, horizon, seed, extra_pairs)
    if prof.classification == "bounded":
        return StrongContractionResult("bounded", prof.constant, None, prof)
    if prof.classification in ("sublinear", "violated") and prof.bins:
        # certificate: the witness with the largest diameter at the largest radius
        top = max(prof.bins, key=lambda k: (prof.bins[k], k))
        return StrongContractionResult(
            "not_bounded" if prof.stabilized else "inconclusive",
            None,
            prof.witnesses[top],
            prof,
        )
    return StrongContractionResult("inconclusive", None, None, prof)


# -- geodesic image property ---------------------------------------------------

@dataclass(frozen=True)
class GitResult:
    passed: bool
    diameter: float
    min_gap: float
    constant: float


def git_check(
    gamma: UnitSpeedRay, segment: PathPolyline, C, horizon, tol=None
) -> GitResult:
    """Project a far segment onto the ray and measure the image diameter.

    Precondition (rejected, not failed): every sampled point of the segment
    stays at least 2C from the ray.  Passes when the projection image has
    diameter at most 4C.
    """
    space = gamma.space
    feet = []
    min_gap = math.inf
    for p in segment.points:
        d, params = ray_distance(p, gamma, horizon)
        min_gap = min(min_gap, d)
        feet += list(params)
    if min_gap < 2 * C:
        raise DomainError(
            f"segment comes within {min_gap} < 2C = {2 * C} of the ray"
        )
    diam = float(max(feet) - min(feet))
    return GitResult(diam <= 4 * C + (tol or 0), diam, float(min_gap), float(C))


# -- asymptoty -----------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticVerdict:
    status: str  # "asymptotic" | "divergent" | "inconclusive"
    sup: float
    witness_t: float
    within_5c: Optional[bool] = None  # empirical note, not asserted


def asymptotic_check(
    gamma1: UnitSpeedRay, gamma2: UnitSpeedRay, C, horizon, samples: int = 256
) -> AsymptoticVerdict:
    """Asymptotic iff gamma2 stays in the closed 6C-neighborhood of gamma1
    over the horizon with a non-increasing tail; divergent iff it exceeds 6C
    and keeps growing; otherwise inconclusive at this horizon."""
    base_gap = gamma1.space.distance(gamma1.eval(0), gamma2.eval(0))
    if base_gap > 6 * C:
        raise DomainError("rays must be based at (or near) the same basepoint")
    ts = [horizon * k / samples for k in range(samples + 1)]
    ds = [float(d) for d in ray_distance_profile(gamma2, gamma1, ts)]
    sup = max(ds)
    arg = ts[ds.index(sup)]
    quarter = samples // 4
    sup_last = max(ds[-quarter:])
    sup_prev = max(ds[-2 * quarter:-quarter])
    if sup <= 6 * C and sup_last <= sup_prev + 1e-9:
        return AsymptoticVerdict("asymptotic", sup, arg, sup <= 5 * C)
    if sup > 6 * C and sup_last >= sup_prev and ds[-1] > 6 * C:
        return AsymptoticVerdict("divergent", sup, arg, False)
    return AsymptoticVerdict("inconclusive", sup, arg, None)


# -- escape times --------------------------------------------------------------

@dataclass(frozen=True)
class EscapeTime:
    """Last parameter at which one ray sits on the 2C-sphere around another."""

    value: float
    constant: float
    bracket: tuple[float, float]

    @property
    def level(self) -> float:
        return 2.0 * self.constant


def t_first_escape(
    alpha: UnitSpeedRay,
    beta: UnitSpeedRay,
    C,
    horizon,
    step=None,
) -> EscapeTime:
    """Find max{t : d(beta(t), alpha) = 2C} by coarse sweep plus bisection.

    The crossing is certified as final by checking that every sampled
    parameter past it stays above the level out to the horizon.
    """
    level = 2.0 * float(C)
    if step is None:
        step = float(C) / 4.0
    n = max(8, int(math.ceil(float(horizon) / step)))
    ts = np.linspace(0.0, float(horizon), n + 1)
    ds = np.asarray(ray_distance_profile(beta, alpha, ts), dtype=float)
    if ds.max() < level:
        still_growing = ds[-1] >= 0.95 * ds.max() and ds[-1] > ds[len(ds) // 2]
        if still_growing:
            raise HorizonError(
                "distance still rising at the horizon without reaching 2C"
            )
        raise DomainError(
            f"ray never reaches distance 2C = {level} (max {ds.max():.6g})"
        )
    if ds[-1] <= level:
        raise HorizonError("still inside the 2C-neighborhood at the horizon")
    below = np.nonzero(ds <= level)[0]
    if len(below) == 0:
        raise DomainError("ray starts outside the 2C-neighborhood")
    k = int(below[-1])  # last sample at or below the level; all later are above
    lo, hi = float(ts[k]), float(ts[k + 1])
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        d = float(ray_distance(beta.eval(mid), alpha, None)[0])
        if d <= level:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-9:
            break
    return EscapeTime(0.5 * (lo + hi), float(C), (lo, hi))


# -- residual checks for the escape-time/product comparison --------------------

@dataclass(frozen=True)
class ClaimReport:
    constant: float
    escape_times: dict
    residual_product_vs_t: float       # bound 12C
    residual_t_under_eta_change: float  # bound 13C
    residual_t_under_zeta_change: float  # bound 13C
    residual_product_spread: float     # bound 50C
    residual_t_vs_boundary_product: float  # bound 62C
    boundary_product: float
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def claim_check(
    reps_eta: Sequence[UnitSpeedRay],
    reps_zeta: Sequence[UnitSpeedRay],
    C_eta,
    C_zeta,
    horizon,
    grid: Sequence[float] = (4.0, 6.0, 8.0),
) -> ClaimReport:
    """Escape times and finite-scale products for two boundary classes,
    checked against the 12C/13C/13C/50C/62C residual bounds."""
    if len(reps_eta) < 2 or len(reps_zeta) < 2:
        raise DomainError("need at least two representatives per class")
    space = reps_eta[0].space
    o = space.basepoint
    C = float(C_eta)

    T: dict[tuple[int, int], float] = {}
    for i, a in enumerate(reps_eta):
        for j, b in enumerate(reps_zeta):
            T[(i, j)] = t_first_escape(a, b, C_eta, horizon).value

    products: dict[tuple[int, int], list[float]] = {}
    r2 = 0.0
    for (i, j), t_ij in T.items():
        a, b = reps_eta[i], reps_zeta[j]
        vals = []
        for fs in grid:
            for ft in grid:
                gp = float(
                    gromov_product(a.eval(fs * t_ij), b.eval(ft * t_ij), o, space)
                )
                vals.append(gp)
                r2 = max(r2, abs(gp - t_ij))
        products[(i, j)] = vals

    r3 = max(
        (
            abs(T[(i, j)] - T[(i2, j)])
            for j in range(len(reps_zeta))
            for i in range(len(reps_eta))
            for i2 in range(len(reps_eta))
        ),
        default=0.0,
    )
    r4 = max(
        (
            abs(T[(i, j)] - T[(i, j2)])
            for i in range(len(reps_eta))
            for j in range(len(reps_zeta))
            for j2 in range(len(reps_zeta))
        ),
        default=0.0,
    )
    all_products = [v for vals in products.values() for v in vals]
    r_spread = max(all_products) - min(all_products)

    from .boundary import boundary_gromov_product

    est = boundary_gromov_product(
        reps_eta[0], reps_zeta[0], space, tol=1e-6, max_horizon=16 * float(horizon)
    )
    r_vs_product = max(abs(t - est.value) for t in T.values())

    violations = []
    for name, value, bound in (
        ("product_vs_t", r2, 12 * C),
        ("t_under_eta_change", r3, 13 * C),
        ("t_under_zeta_change", r4, 13 * C),
        ("product_spread", r_spread, 50 * C),
        ("t_vs_boundary_product", r_vs_product, 62 * C),
    ):
        if value > bound:
            violations.append((name, value, bound))
    return ClaimReport(
        C, {f"{i},{j}": v for (i, j), v in T.items()},
        r2, r3, r4, r_spread, r_vs_product, est.value, tuple(violations),
    )


# -- neighborhood-basis condition ----------------------------------------------

@dataclass(frozen=True)
class BasisReport:
    eta: str
    r: float
    R_eta: float
    rows: tuple  # (zeta, product(eta,zeta), R_zeta, members of U(zeta,R_zeta))
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def neighborhood_basis_check(
    eta,
    r: float,
    boundary: Sequence,
    c_table: dict,
    horizon,
    product_fn=None,
) -> BasisReport:
    """Instantiate the refinement-radius formulas and exhaustively verify
    U(zeta, R_zeta) is contained in U(eta, r) over a finite boundary.

    R_eta = r + 2*K_eta + 13*C_eta and
    R_zeta = (zeta.eta) + K_eta + K_zeta + 6*C_eta + 4*C_zeta, with K = 62C.
    """
    from .boundary import boundary_gromov_product

    labels = [bp.label for bp in boundary]
    for lab in labels:
        if lab not in c_table:
            raise DomainError(f"missing contraction constant for {lab}")
    if eta.label not in labels:
        raise DomainError("eta must belong to the supplied boundary")

    space = eta.canonical.space
    cache: dict[tuple[str, str], float] = {}

    def prod(a, b) -> float:
        if a.label == b.label:
            return math.inf
        key = (min(a.label, b.label), max(a.label, b.label))
        if key not in cache:
            if product_fn is not None:
                cache[key] = float(product_fn(a, b))
            else:
                est = boundary_gromov_product(
                    a.canonical, b.canonical, space, tol=1e-6,
                    max_horizon=float(horizon),
                )
                cache[key] = est.value
        return cache[key]

    C_eta = float(c_table[eta.label])
    K_eta = 62.0 * C_eta
    R_eta = r + 2.0 * K_eta + 13.0 * C_eta

    rows = []
    violations = []
    for zeta in boundary:
        p_ez = prod(eta, zeta)
        if p_ez < R_eta:
            continue
        C_zeta = float(c_table[zeta.label])
        K_zeta = 62.0 * C_zeta
        R_zeta = (
            math.inf
            if math.isinf(p_ez)
            else p_ez + K_eta + K_zeta + 6.0 * C_eta + 4.0 * C_zeta
        )
        members = [xi.label for xi in boundary if prod(zeta, xi) >= R_zeta]
        for xi in boundary:
            if prod(zeta, xi) >= R_zeta and prod(eta, xi) < r:
                violations.append((zeta.label, xi.label))
        rows.append((zeta.label, p_ez, R_zeta, tuple(members)))
    return BasisReport(eta.label, float(r), R_eta, tuple(rows), tuple(violations))


# -- quasi-geodesic deviation ----------------------------------------------------

@dataclass(frozen=True)
class MorseResult:
    deviation: float
    lam: float
    eps: float
    max_pairs_checked: int


def morse_witness(
    gamma: UnitSpeedRay,
    quasigeodesic: PathPolyline,
    lam: float,
    eps: float,
    horizon,
    max_pairs: int = 2000,
    tol: float = 1e-9,
) -> MorseResult:
    """Sup over polyline samples of the distance to the ray, after verifying
    the polyline really is a (lam, eps)-quasi-geodesic with endpoints on it.

    One data point toward a gauge; no gauge function is fitted.
    """
    space = gamma.space
    pts = quasigeodesic.points
    cum = quasigeodesic.cumulative
    for endpoint in (pts[0], pts[-1]):
        d, _ = ray_distance(endpoint, gamma, horizon)
        if d > 1e-9:
            raise DomainError("polyline endpoints must lie on the ray")

    n = len(pts)
    idx = range(n)
    if n * (n - 1) // 2 > max_pairs:
        stride = max(1, int(n / math.sqrt(2 * max_pairs)))
        idx = list(range(0, n, stride)) + [n - 1]
    checked = 0
    for ii, i in enumerate(idx):
        for j in list(idx)[ii + 1:]:
            du = float(cum[j] - cum[i])
            d = float(space.distance(pts[i], pts[j]))
            if d < du / lam - eps - tol or d > lam * du + eps + tol:
                raise DomainError(
                    f"polyline is not a ({lam},{eps})-quasi-geodesic "
                    f"(params {cum[i]},{cum[j]}: length {du}, distance {d})"
                )
            checked += 1
    deviation = 0.0
    for p in pts:
        d, _ = ray_distance(p, gamma, horizon)
        deviation = max(deviation, float(d))
    return MorseResult(deviation, lam, eps, checked)
