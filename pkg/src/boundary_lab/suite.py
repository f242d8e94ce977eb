"""Acceptance suite: every shipped quantitative claim as a runnable check.

Each criterion is a function taking a shared context (built spaces, seed,
cached constants) and returning a CriterionResult; ``run_suite`` executes
the requested subset and reports one line per criterion.  The pytest
acceptance module drives exactly these functions, so the CLI and the test
suite cannot drift apart.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from importlib.resources import files
from typing import Callable, Optional

import numpy as np

from . import spacezoo
from .annulus import AnnulusSpace
from .boundary import (
    boundary_gromov_product,
    boundary_map_continuity_test,
    converges_in_gp,
    hausdorff_violation_witness,
    u_set_membership,
)
from .contraction import (
    claim_check,
    contraction_profile,
    git_check,
    neighborhood_basis_check,
    project,
    strong_contraction_constant,
)
from .dsl import compile_space, parse_space, serialize_space
from .errors import DomainError, SpaceParseError
from .mesh_oracle import mesh_oracle_distance
from .metric import metric_axiom_check
from .samplers import annulus_point_sampler, profile_pair_sampler, rc_point_sampler


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    elapsed: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key:<22} {self.title} ({self.elapsed:.1f}s)"


@dataclass
class SuiteContext:
    seed: int = 7
    spaces: dict = field(default_factory=dict)

    def zoo(self, name: str):
        if name not in self.spaces:
            builder, n = name.split(":")
            self.spaces[name] = getattr(spacezoo, f"build_{builder}")(int(n))
        return self.spaces[name]


# -- contraction constants for boundary classes --------------------------------

def alpha_extremal_pairs(space: AnnulusSpace, k_max: int = 9):
    """Admissible pairs pushing the joint-projection spread toward its sup."""
    pairs = []
    for k in range(1, k_max + 1):
        r = float(2 ** k)
        th = math.asin((r - 1.0) / r) - 1e-6
        pairs.append((space.pt(th, r), space.pt(0.0, r * math.cos(th))))
    return pairs


def class_constants(zoo: spacezoo.ZooSpace, seed: int, n: int = 500) -> dict:
    """Strong-contraction constants per boundary class: max over stored
    representatives of the bounded profile constant, padded by 10%."""
    key = ("c_table", seed, n)
    if key in zoo.c_table_cache:
        return zoo.c_table_cache[key]
    space = zoo.space
    table: dict[str, float] = {}
    for label, bp in zoo.boundary.items():
        if label in ("alpha", "beta"):
            scale, r_max = 1.0, 256.0
            extra = alpha_extremal_pairs(space) if label == "alpha" else ()
        else:
            scale = float(2 ** int(label[1:]))
            r_max = 8.0 * max(scale, 32.0)
            extra = ()
        best = 0.0
        ok = True
        for rep in bp.representatives():
            sampler = profile_pair_sampler(
                space, rep, horizon=40.0 + 4.0 * scale, r_min=0.02, r_max=r_max
            )
            res = strong_contraction_constant(
                rep, space, sampler, n, horizon=16.0 * r_max, seed=seed,
                extra_pairs=extra,
            )
            if res.status == "bounded":
                best = max(best, res.constant)
            else:
                ok = False
        table[label] = 1.1 * max(best, 0.25)
        table[f"{label}__bounded"] = ok
    zoo.c_table_cache[key] = table
    return table


# -- criteria -------------------------------------------------------------------

def criterion_products_X(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("X:16")
    mh, mnh = z.product_horizon, z.product_min_horizon
    failures = []
    for i in range(1, 17):
        for side in ("alpha", "beta"):
            est = boundary_gromov_product(
                z.boundary[side], z.boundary[f"g{i}"],
                max_horizon=mh, min_horizon=mnh,
            )
            if not est.converged or est.value != float(i):
                failures.append((side, i, est.value))
    est = boundary_gromov_product(
        z.boundary["alpha"], z.boundary["beta"], max_horizon=mh, min_horizon=mnh
    )
    if not est.converged or est.value != 0.0:
        failures.append(("alpha", "beta", est.value))
    elapsed = time.time() - t0
    return CriterionResult(
        "products-X", "exact boundary products in X:16 (values i and 0)",
        not failures and elapsed < 5.0, elapsed, {"failures": failures},
    )


def criterion_products_Y(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Y:16")
    mh, mnh = z.product_horizon, z.product_min_horizon
    failures = []
    for i in range(3, 17):
        ea = boundary_gromov_product(
            z.boundary["alpha"], z.boundary[f"g{i}"], max_horizon=mh, min_horizon=mnh
        )
        eb = boundary_gromov_product(
            z.boundary["beta"], z.boundary[f"g{i}"], max_horizon=mh, min_horizon=mnh
        )
        if not ea.converged or ea.value != 0.0:
            failures.append(("alpha", i, ea.value))
        if not eb.converged or eb.value != float(i):
            failures.append(("beta", i, eb.value))
    return CriterionResult(
        "products-Y", "exact boundary products in Y:16 (alpha 0, beta i)",
        not failures, time.time() - t0, {"failures": failures},
    )


def criterion_nonhausdorff_X(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("X:16")
    mh, mnh = z.product_horizon, z.product_min_horizon
    seq = [z.boundary[f"g{i}"] for i in range(1, 17)]
    wit = hausdorff_violation_witness(
        [z.boundary["alpha"], z.boundary["beta"]], seq, [1, 2, 4, 8],
        max_horizon=mh, min_horizon=mnh,
    )
    ok = wit is not None and {wit[0].label, wit[1].label} == {"alpha", "beta"}
    radii = list(range(1, 16)) + [2.5, 7.5]
    rep = converges_in_gp(seq, z.boundary["alpha"], radii, max_horizon=mh, min_horizon=mnh)
    table = {}
    for r, first, _ in rep.rows:
        table[r] = first
        if first != math.ceil(r):
            ok = False
    return CriterionResult(
        "nonhausdorff-X", "sequence converges to both points; I(r) = ceil(r)",
        ok, time.time() - t0, {"witness": wit and (wit[0].label, wit[1].label),
                               "first_indices": table},
    )


def criterion_discontinuity(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    zx, zy = ctx.zoo("X:16"), ctx.zoo("Y:16")
    cert1 = boundary_map_continuity_test(
        None, zx, zy, [f"g{i}" for i in range(3, 17)], "alpha", 1.0,
        max_horizon_from=zx.product_horizon, max_horizon_to=zy.product_horizon,
        min_horizon_from=zx.product_min_horizon, min_horizon_to=zy.product_min_horizon,
    )
    zc, zyc = ctx.zoo("Xcat0:12"), ctx.zoo("Ycat0:12")
    cert2 = boundary_map_continuity_test(
        None, zc, zyc, [f"g{i}" for i in range(1, 13)], "alpha", 1.0,
        max_horizon_from=zc.product_horizon, max_horizon_to=zyc.product_horizon,
        min_horizon_from=zc.product_min_horizon, min_horizon_to=zyc.product_min_horizon,
    )
    elapsed = time.time() - t0
    ok = (
        cert1.discontinuous
        and cert2.discontinuous
        and all(v <= 0.5 for _, v in cert1.image_products)
        and all(v <= 0.5 for _, v in cert2.image_products)
        and elapsed < 30.0
    )
    return CriterionResult(
        "discontinuity", "identity and shear pairings discontinuous at alpha, r=1",
        ok, elapsed,
        {"glued": cert1.verdict, "annulus": cert2.verdict,
         "max_image_product": max(
             [v for _, v in cert1.image_products]
             + [v for _, v in cert2.image_products]
         )},
    )


def criterion_kernel_vs_oracle(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    space = AnnulusSpace()
    rng = np.random.default_rng(ctx.seed)
    worst = 0.0
    undershoot = 0.0
    for _ in range(100):
        ta, tb = rng.uniform(-20.0, 20.0, 2)
        ra, rb = np.exp(rng.uniform(0.0, math.log(50.0), 2))
        p, q = space.pt(ta, max(1.0, ra)), space.pt(tb, max(1.0, rb))
        exact = space.distance(p, q)
        if exact < 1e-9:
            continue
        oracle = mesh_oracle_distance(p, q, h=0.01)
        rel = (oracle - exact) / exact
        worst = max(worst, rel)
        undershoot = min(undershoot, rel)
    # continuity of the two branch formulas across the case boundary
    max_gap = 0.0
    for _ in range(100):
        rp, rq = np.exp(rng.uniform(0.0, math.log(50.0), 2))
        rp, rq = max(1.0, rp), max(1.0, rq)
        delta = math.acos(min(1.0, 1.0 / rp)) + math.acos(min(1.0, 1.0 / rq))
        tangent = (
            math.sqrt(max(rp * rp - 1.0, 0.0))
            + math.sqrt(max(rq * rq - 1.0, 0.0))
        )
        chord = math.sqrt(
            max(rp * rp + rq * rq - 2.0 * rp * rq * math.cos(delta), 0.0)
        )
        max_gap = max(max_gap, abs(tangent - chord))
    elapsed = time.time() - t0
    ok = worst <= 0.02 and undershoot >= -1e-9 and max_gap <= 1e-9 and elapsed < 60.0
    return CriterionResult(
        "kernel-vs-oracle", "closed form within 2% of mesh oracle; branch continuity",
        ok, elapsed,
        {"worst_rel": worst, "min_rel": undershoot, "case_boundary_gap": max_gap},
    )


def criterion_strong_contraction_alpha(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Xcat0:12")
    space = z.space
    alpha = z.boundary["alpha"].canonical
    sampler = profile_pair_sampler(space, alpha, horizon=60.0, r_min=0.02, r_max=512.0)
    prof = contraction_profile(
        alpha, space, sampler, 10_000, horizon=2048.0, seed=ctx.seed,
        extra_pairs=alpha_extremal_pairs(space),
    )
    worst = max(float(v) for v in prof.bins.values())
    ok = worst <= math.pi + 0.01 and prof.classification == "bounded"
    return CriterionResult(
        "alpha-strong-annulus", "max joint projection diameter <= pi + 0.01",
        ok, time.time() - t0,
        {"max_diam": worst, "classification": prof.classification,
         "constant": prof.constant},
    )


def criterion_products_Xcat0(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Xcat0:12")
    failures = []
    for i in range(2, 13):
        est = boundary_gromov_product(
            z.boundary["alpha"], z.boundary[f"g{i}"],
            max_horizon=z.product_horizon, min_horizon=z.product_min_horizon,
        )
        if not est.converged or not (i - 0.5 <= est.value <= i + 0.5):
            failures.append((i, est.value, est.status))
    return CriterionResult(
        "products-Xcat0", "annulus products within 0.5 of the branch index",
        not failures, time.time() - t0, {"failures": failures},
    )


def criterion_isolation_Ycat0(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Ycat0:14")
    mh, mnh = z.product_horizon, z.product_min_horizon
    failures = []
    estimates: dict = {}
    labels = ["alpha", "beta"] + [f"g{i}" for i in range(1, 15)]
    for i in range(1, 15):
        est = boundary_gromov_product(
            z.boundary["alpha"], z.boundary[f"g{i}"], max_horizon=mh, min_horizon=mnh
        )
        estimates[("alpha", f"g{i}")] = est
        if not est.converged or est.value > 0.3:
            failures.append(("alpha", i, est.value))
    for i in range(1, 15):
        for j in range(i + 1, 15):
            est = boundary_gromov_product(
                z.boundary[f"g{i}"], z.boundary[f"g{j}"],
                max_horizon=mh, min_horizon=mnh,
            )
            estimates[(f"g{i}", f"g{j}")] = est
            want = 2.0 ** min(i, j) - 1.0
            if not est.converged or abs(est.value - want) > 1e-6:
                failures.append((i, j, est.value))
    # isolation: U(g_i, 2^i) contains exactly g_i within the built boundary
    for i in range(1, 15):
        members = []
        for lab in labels:
            verdict = u_set_membership(
                z.boundary[lab], z.boundary[f"g{i}"], 2.0 ** i,
                max_horizon=mh, min_horizon=mnh,
            )
            if verdict.state == "in":
                members.append(lab)
        if members != [f"g{i}"]:
            failures.append(("isolation", i, members))
    return CriterionResult(
        "isolation-Ycat0", "vertical-family products and isolation radii",
        not failures, time.time() - t0, {"failures": failures[:5]},
    )


def criterion_claim_residuals(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Xcat0:12")
    table = class_constants(z, ctx.seed)
    labels = ["alpha", "beta"] + [f"g{i}" for i in range(1, 13)]
    violations = []
    checked = 0
    for e_lab in labels:
        for z_lab in labels:
            if e_lab == z_lab:
                continue
            C_eta, C_zeta = table[e_lab], table[z_lab]
            horizon = 50.0 * C_eta + 100.0
            rep = claim_check(
                z.boundary[e_lab].representatives(),
                z.boundary[z_lab].representatives(),
                C_eta, C_zeta, horizon,
            )
            checked += 1
            if not rep.passed:
                violations.append((e_lab, z_lab, rep.violations))
    return CriterionResult(
        "claim-residuals", "escape-time residual bounds (12C/13C/13C/50C/62C)",
        not violations, time.time() - t0,
        {"pairs_checked": checked, "violations": violations[:5],
         "all_classes_bounded": all(
             table[f"{lab}__bounded"] for lab in labels
         )},
    )


def criterion_basis_condition(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    failures = []
    for name in ("Xcat0:12", "Ycat0:12"):
        z = ctx.zoo(name)
        table = class_constants(z, ctx.seed)
        pts = z.boundary_points()
        cache: dict = {}

        def product_fn(a, b, _z=z, _cache=cache):
            key = (min(a.label, b.label), max(a.label, b.label))
            if key not in _cache:
                _cache[key] = boundary_gromov_product(
                    a, b, max_horizon=_z.product_horizon,
                    min_horizon=_z.product_min_horizon,
                ).value
            return _cache[key]

        for eta in pts:
            for r in (1.0, 2.0, 4.0, 8.0):
                rep = neighborhood_basis_check(
                    eta, r, pts, table, z.product_horizon, product_fn=product_fn
                )
                if not rep.passed:
                    failures.append((name, eta.label, r, rep.violations))
    return CriterionResult(
        "basis-condition", "refinement radii give nested product neighborhoods",
        not failures, time.time() - t0, {"failures": failures[:5]},
    )


def criterion_git_suite(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("Xcat0:12")
    space = z.space
    alpha = z.boundary["alpha"].canonical
    C = math.pi
    rng = random.Random(ctx.seed)
    passed = 0
    worst = 0.0
    rejected = 0
    while passed < 1000 and rejected < 40_000:
        th1 = rng.uniform(-30.0, 30.0)
        th2 = th1 + rng.uniform(-8.0, 8.0)
        r1 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50.0)))
        r2 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50.0)))
        seg = space.geodesic_polyline(space.pt(th1, r1), space.pt(th2, r2), 48)
        try:
            res = git_check(alpha, seg, C, horizon=200.0)
        except DomainError:
            rejected += 1
            continue
        passed += 1
        worst = max(worst, res.diameter)
        if not res.passed:
            return CriterionResult(
                "git-suite", "far segments project to diameter <= 4C",
                False, time.time() - t0,
                {"diam": res.diameter, "bound": 4 * C},
            )
    return CriterionResult(
        "git-suite", "far segments project to diameter <= 4C",
        passed == 1000 and worst <= 4 * C, time.time() - t0,
        {"segments": passed, "worst_diam": worst, "bound": 4 * C,
         "rejected_proposals": rejected},
    )


def criterion_log_profile(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    z = ctx.zoo("X:14")
    space = z.space
    alpha = space.edge_ray("alpha")
    witnesses = [
        (space.point(f"g{i}", 0), space.point("beta", i)) for i in range(4, 15)
    ]
    sampler = profile_pair_sampler(space, alpha, horizon=2 ** 14)
    prof = contraction_profile(
        alpha, space, sampler, 300, horizon=2 ** 16, seed=ctx.seed,
        extra_pairs=witnesses,
    )
    failures = []
    for i in range(4, 15):
        val = prof.bins.get(i)
        if val is None or val < i:
            failures.append((i, val))
        elif not (0.5 <= float(val) / i <= 2.5):
            failures.append((i, float(val)))
    ok = not failures and prof.classification == "sublinear"
    return CriterionResult(
        "log-profile-X", "gauge of the glued boundary ray grows logarithmically",
        ok, time.time() - t0,
        {"classification": prof.classification,
         "per_doubling": prof.growth_per_doubling, "failures": failures},
    )


def criterion_parser(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    details: dict = {}
    ok = True
    for name, builder in (("X.space", "X:16"), ("Y.space", "Y:16")):
        text = files("boundary_lab").joinpath(f"spaces/{name}").read_text()
        compiled = compile_space(parse_space(text))
        built = ctx.zoo(builder).space
        same = compiled.describe() == built.describe()
        details[name] = same
        ok = ok and same
    rng = random.Random(ctx.seed)
    roundtrips = 0
    for _ in range(50):
        desc = _random_description(rng)
        try:
            rc = compile_space(parse_space(desc))
        except SpaceParseError:
            continue
        again = compile_space(parse_space(serialize_space(rc)))
        if again.describe() != rc.describe():
            ok = False
            details["roundtrip_failure"] = desc
            break
        roundtrips += 1
    details["roundtrips"] = roundtrips
    codes = {}
    fixtures = {
        "E_SYNTAX": "ray\n",
        "E_UNDECLARED": "ray a\nglue a:0 b:0\nbase a:0\n",
        "E_LENGTH_NONPOSITIVE": "ray a\nseg s -3\nglue a:0 s:0\nbase a:0\n",
        "E_NO_BASEPOINT": "ray a\nray b\nglue a:0 b:0\n",
        "E_DISCONNECTED": "ray a\nray b\nbase a:0\n",
    }
    for want, text in fixtures.items():
        try:
            compile_space(parse_space(text))
            codes[want] = "no error"
            ok = False
        except SpaceParseError as err:
            codes[want] = err.code
            ok = ok and err.code == want
    details["codes"] = codes
    return CriterionResult(
        "parser", "shipped descriptions, round-trips, and diagnostics",
        ok and roundtrips >= 40, time.time() - t0, details,
    )


def _random_description(rng: random.Random) -> str:
    lines = ["ray r0"]
    n_seg = rng.randint(1, 4)
    for k in range(n_seg):
        lines.append(f"seg s{k} {rng.randint(1, 9)}")
    lines.append("base r0:0")
    anchors = ["r0:0"]
    for k in range(n_seg):
        lines.append(f"glue s{k}:0 {anchors[rng.randrange(len(anchors))]}")
        anchors.append(f"s{k}:{rng.randint(1, 1)}")
    if rng.random() < 0.5:
        lines.append("repeat j=1..2 {")
        lines.append("  ray t{j}")
        lines.append("  glue t{j}:0 r0:j")
        lines.append("}")
    return "\n".join(lines) + "\n"


def criterion_property_suites(ctx: SuiteContext) -> CriterionResult:
    t0 = time.time()
    zx = ctx.zoo("X:8")
    zc = ctx.zoo("Xcat0:8")
    details: dict = {}
    ok = True

    rep = metric_axiom_check(zx.space, rc_point_sampler(zx.space, 2 ** 9), 1000, ctx.seed)
    details["rc_axioms"] = rep.to_dict()
    ok &= rep.passed(0)

    rep2 = metric_axiom_check(
        zc.space, annulus_point_sampler(zc.space, -20.0, 20.0, 50.0), 1000, ctx.seed
    )
    details["annulus_axioms"] = rep2.to_dict()
    ok &= rep2.passed(1e-9)

    # projection idempotence over both engines
    rng = random.Random(ctx.seed)
    alpha_rc = zx.space.edge_ray("alpha")
    sample_rc = rc_point_sampler(zx.space, 2 ** 9)
    alpha_ann = zc.boundary["alpha"].canonical
    sample_ann = annulus_point_sampler(zc.space, -20.0, 20.0, 50.0)
    worst_idem = 0.0
    for _ in range(60):
        x = sample_rc(rng)
        for ray, lo, hi in project(x, alpha_rc, horizon=2 ** 10).intervals:
            for par in (lo, hi):
                again = project(ray.eval(par), ray, horizon=2 ** 10)
                worst_idem = max(worst_idem, float(again.distance))
        y = sample_ann(rng)
        for ray, lo, hi in project(y, alpha_ann, horizon=200.0).intervals:
            for par in (lo, hi):
                again = project(ray.eval(par), ray, horizon=200.0)
                worst_idem = max(worst_idem, float(again.distance))
    details["projection_idempotence"] = worst_idem
    ok &= worst_idem <= 1e-6

    # product symmetry
    sym_exact = True
    for i in (2, 5, 8):
        ab = boundary_gromov_product(
            zx.boundary["alpha"], zx.boundary[f"g{i}"],
            max_horizon=zx.product_horizon, min_horizon=zx.product_min_horizon,
        )
        ba = boundary_gromov_product(
            zx.boundary[f"g{i}"], zx.boundary["alpha"],
            max_horizon=zx.product_horizon, min_horizon=zx.product_min_horizon,
        )
        sym_exact &= ab.value == ba.value
    sym_float = True
    for i in (2, 5, 8):
        ab = boundary_gromov_product(
            zc.boundary["alpha"], zc.boundary[f"g{i}"],
            max_horizon=zc.product_horizon, min_horizon=zc.product_min_horizon,
        )
        ba = boundary_gromov_product(
            zc.boundary[f"g{i}"], zc.boundary["alpha"],
            max_horizon=zc.product_horizon, min_horizon=zc.product_min_horizon,
        )
        sym_float &= abs(ab.value - ba.value) <= 1e-9
    details["product_symmetry"] = {"exact": sym_exact, "annulus": sym_float}
    ok &= sym_exact and sym_float

    # determinism: same seed, same profile twice
    sampler = profile_pair_sampler(zc.space, alpha_ann, horizon=40.0, r_max=64.0)
    p1 = contraction_profile(alpha_ann, zc.space, sampler, 400, 300.0, seed=ctx.seed)
    p2 = contraction_profile(alpha_ann, zc.space, sampler, 400, 300.0, seed=ctx.seed)
    det = json.dumps(p1.to_rows(), sort_keys=True) == json.dumps(
        p2.to_rows(), sort_keys=True
    )
    details["determinism"] = det
    ok &= det

    elapsed = time.time() - t0
    return CriterionResult(
        "property-suites", "axioms, idempotence, symmetry, determinism",
        bool(ok) and elapsed < 120.0, elapsed, details,
    )


CRITERIA: list[tuple[str, Callable[[SuiteContext], CriterionResult]]] = [
    ("products-X", criterion_products_X),
    ("products-Y", criterion_products_Y),
    ("nonhausdorff-X", criterion_nonhausdorff_X),
    ("discontinuity", criterion_discontinuity),
    ("kernel-vs-oracle", criterion_kernel_vs_oracle),
    ("alpha-strong-annulus", criterion_strong_contraction_alpha),
    ("products-Xcat0", criterion_products_Xcat0),
    ("isolation-Ycat0", criterion_isolation_Ycat0),
    ("claim-residuals", criterion_claim_residuals),
    ("basis-condition", criterion_basis_condition),
    ("git-suite", criterion_git_suite),
    ("log-profile-X", criterion_log_profile),
    ("parser", criterion_parser),
    ("property-suites", criterion_property_suites),
]


def run_suite(seed: int = 7, keys: Optional[list[str]] = None, echo=print):
    ctx = SuiteContext(seed=seed)
    wanted = set(keys) if keys else None
    results = []
    for key, fn in CRITERIA:
        if wanted and key not in wanted:
            continue
        res = fn(ctx)
        results.append(res)
        if echo:
            echo(res.line())
    return results
