"""Command-line front end.

Every command prints one deterministic JSON document (or CSV with
--format csv where row output makes sense) and exits 0 on success/pass,
1 when a checked property fails (the failure artifact is still printed),
and 2 on usage or build errors.  Sampling commands require --seed and are
reproducible from (argv, seed); --jobs only parallelizes trial chunks,
the merged output is identical for any job count.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction

from . import spacezoo
from .annulus import SpiralMap
from .boundary import (
    boundary_gromov_product,
    boundary_map_continuity_test,
    converges_in_gp,
)
from .contraction import (
    claim_check,
    contraction_profile,
    git_check,
    neighborhood_basis_check,
    project,
    t_first_escape,
)
from .dsl import compile_space, parse_space, serialize_space
from .errors import BoundaryLabError, SpaceParseError
from .metric import gromov_product
from .points import AnnulusPoint, Point
from .ray_complex import RayComplex
from .reports import write_csv, write_json
from .samplers import profile_pair_sampler
from .suite import class_constants, run_suite

PROFILE_CHUNK = 250


def parse_point(space, text: str) -> Point:
    """Point literals: `base`, `<edge>:<param>` (rationals as p/q), or
    `ann:<t>,<r>` for raw annulus coordinates."""
    if text == "base":
        return space.basepoint
    if isinstance(space, RayComplex):
        if ":" not in text:
            raise SpaceParseError("E_SYNTAX", f"bad point literal {text!r}")
        eid, par = text.split(":", 1)
        return space.point(eid, Fraction(par))
    if text.startswith("ann:"):
        t, r = text[4:].split(",", 1)
        return space.pt(float(t), float(r))
    if ":" not in text:
        raise SpaceParseError("E_SYNTAX", f"bad point literal {text!r}")
    name, par = text.split(":", 1)
    if name == "alpha":
        return space.pt(float(par), 1.0)
    if name == "beta":
        return space.pt(-float(par), 1.0)
    return space.ray_pt(name, float(par))


def resolve_ray(zoo, label: str):
    if isinstance(zoo.space, RayComplex):
        return zoo.space.edge_ray(label)
    if label in zoo.boundary:
        return zoo.boundary[label].canonical
    raise BoundaryLabError(f"unknown ray label {label!r}")


def _num(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def _estimate_payload(est) -> dict:
    return {
        "value": est.value,
        "status": est.status,
        "schedule": list(est.schedule),
        "window_minima": list(est.window_minima),
        "error_bar": est.error_bar,
    }


def cmd_dist(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    p = parse_point(zoo.space, getattr(args, "from"))
    q = parse_point(zoo.space, args.to)
    return 0, {"distance": _num(zoo.space.distance(p, q))}


def cmd_gromov(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    x = parse_point(zoo.space, args.x)
    y = parse_point(zoo.space, args.y)
    z = parse_point(zoo.space, args.z)
    return 0, {"value": _num(gromov_product(x, y, z, zoo.space))}


def cmd_project(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    x = parse_point(zoo.space, args.point)
    rays = [resolve_ray(zoo, lab) for lab in args.target.split(",")]
    horizon = args.horizon if args.horizon else zoo.sweep_horizon
    res = project(x, rays, horizon, tol=args.tol)
    return 0, {
        "schema": "projection@1",
        "space": zoo.space_id,
        "distance": _num(res.distance),
        "intervals": [
            {"ray": ray.label, "lo": _num(lo), "hi": _num(hi)}
            for ray, lo, hi in res.intervals
        ],
        "diameter": _num(res.diameter(zoo.space)),
    }


def _profile_chunk(payload):
    zoo_spec, label, n, horizon, seed, chunk = payload
    zoo = spacezoo.get_space(zoo_spec)
    gamma = resolve_ray(zoo, label)
    sampler = profile_pair_sampler(zoo.space, gamma, horizon=horizon / 4)
    return contraction_profile(
        gamma, zoo.space, sampler, n, horizon, seed=seed * 7919 + chunk
    )


def cmd_profile(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    horizon = args.horizon if args.horizon else zoo.sweep_horizon
    chunks = []
    remaining, idx = args.n, 0
    while remaining > 0:
        take = min(PROFILE_CHUNK, remaining)
        chunks.append((args.space, args.ray, take, horizon, args.seed, idx))
        remaining -= take
        idx += 1
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_profile_chunk, chunks))
    else:
        parts = [_profile_chunk(c) for c in chunks]
    profile = parts[0]
    for part in parts[1:]:
        profile = profile.merge(part)
    profile.classify()
    payload = {
        "schema": "contraction_profile@1",
        "space": zoo.space_id,
        "ray": args.ray,
        "samples": profile.samples,
        "classification": profile.classification,
        "constant": profile.constant,
        "growth_per_doubling": profile.growth_per_doubling,
        "rows": profile.to_rows(),
    }
    return 0, payload


def cmd_git(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    if isinstance(zoo.space, RayComplex):
        raise BoundaryLabError("the far-segment suite runs on annulus spaces")
    space = zoo.space
    gamma = resolve_ray(zoo, args.ray)
    C = args.c
    rng = random.Random(args.seed)
    worst, done, rejected = 0.0, 0, 0
    while done < args.n and rejected < 40 * args.n:
        th1 = rng.uniform(-30.0, 30.0)
        th2 = th1 + rng.uniform(-8.0, 8.0)
        r1 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50.0)))
        r2 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50.0)))
        seg = space.geodesic_polyline(space.pt(th1, r1), space.pt(th2, r2), 48)
        try:
            res = git_check(gamma, seg, C, horizon=200.0)
        except BoundaryLabError:
            rejected += 1
            continue
        done += 1
        worst = max(worst, res.diameter)
    passed = done == args.n and worst <= 4 * C
    return (0 if passed else 1), {
        "schema": "git_suite@1",
        "space": zoo.space_id,
        "segments": done,
        "worst_diameter": worst,
        "bound": 4 * C,
        "passed": passed,
        "replay": {"seed": args.seed, "n": args.n, "c": C},
    }


def cmd_escape(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    alpha = resolve_ray(zoo, args.alpha)
    beta = resolve_ray(zoo, args.beta)
    horizon = args.horizon if args.horizon else zoo.sweep_horizon
    et = t_first_escape(alpha, beta, args.c, horizon)
    return 0, {
        "schema": "escape_time@1",
        "space": zoo.space_id,
        "value": et.value,
        "constant": et.constant,
        "bracket": list(et.bracket),
    }


def cmd_claim(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    table = class_constants(zoo, args.seed)
    C_eta = args.c_eta if args.c_eta else table[args.eta]
    C_zeta = args.c_zeta if args.c_zeta else table[args.zeta]
    horizon = args.horizon if args.horizon else 50.0 * C_eta + 100.0
    rep = claim_check(
        zoo.boundary[args.eta].representatives(),
        zoo.boundary[args.zeta].representatives(),
        C_eta, C_zeta, horizon,
    )
    rows = [
        {"residual": "product_vs_t", "value": rep.residual_product_vs_t,
         "bound": 12 * rep.constant},
        {"residual": "t_under_eta_change", "value": rep.residual_t_under_eta_change,
         "bound": 13 * rep.constant},
        {"residual": "t_under_zeta_change", "value": rep.residual_t_under_zeta_change,
         "bound": 13 * rep.constant},
        {"residual": "product_spread", "value": rep.residual_product_spread,
         "bound": 50 * rep.constant},
        {"residual": "t_vs_boundary_product",
         "value": rep.residual_t_vs_boundary_product, "bound": 62 * rep.constant},
    ]
    payload = {
        "schema": "claim_report@1",
        "space": zoo.space_id,
        "rows": rows,
        "replay": {
            "space": args.space, "eta": args.eta, "zeta": args.zeta,
            "c_eta": C_eta, "c_zeta": C_zeta, "horizon": horizon,
            "seed": args.seed,
        },
        **asdict(rep),
    }
    return (0 if rep.passed else 1), payload


def cmd_basis(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    table = class_constants(zoo, args.seed)
    rep = neighborhood_basis_check(
        zoo.boundary[args.eta], args.r, zoo.boundary_points(), table,
        zoo.product_horizon,
    )
    payload = {
        "schema": "basis_report@1",
        "space": zoo.space_id,
        "replay": {"space": args.space, "eta": args.eta, "r": args.r,
                   "seed": args.seed},
        **asdict(rep),
    }
    return (0 if rep.passed else 1), payload


def cmd_bproduct(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    zetas = sorted(zoo.boundary) if args.zeta == "all" else [args.zeta]
    rows = []
    last = None
    for zeta in zetas:
        last = boundary_gromov_product(
            zoo.boundary[args.eta], zoo.boundary[zeta],
            max_horizon=zoo.product_horizon, min_horizon=zoo.product_min_horizon,
        )
        rows.append({"eta": args.eta, "zeta": zeta, "value": last.value,
                     "status": last.status})
    if args.zeta != "all":
        return 0, {
            "schema": "product_estimate@1",
            "space": zoo.space_id,
            "eta": args.eta,
            "zeta": args.zeta,
            "rows": rows,
            **_estimate_payload(last),
        }
    return 0, {
        "schema": "product_matrix@1",
        "space": zoo.space_id,
        "eta": args.eta,
        "rows": rows,
    }


def cmd_oracle(args) -> tuple[int, dict]:
    from .mesh_oracle import mesh_oracle_distance

    zoo = spacezoo.get_space(args.space)
    if isinstance(zoo.space, RayComplex):
        raise BoundaryLabError("the mesh oracle runs on annulus spaces")
    p = parse_point(zoo.space, getattr(args, "from"))
    q = parse_point(zoo.space, args.to)
    if not isinstance(p, AnnulusPoint) or not isinstance(q, AnnulusPoint):
        raise BoundaryLabError("the mesh oracle compares annulus points")
    window = None
    if args.window:
        t_lo, t_hi, r_max = (float(v) for v in args.window.split(","))
        window = (t_lo, t_hi, r_max)
    oracle = mesh_oracle_distance(p, q, h=args.h, window=window)
    exact = zoo.space.distance(p, q)
    rel = (oracle - exact) / exact if exact else 0.0
    return 0, {
        "schema": "oracle_check@1",
        "space": zoo.space_id,
        "h": args.h,
        "closed_form": exact,
        "oracle": oracle,
        "relative_gap": rel,
    }


def cmd_converge(args) -> tuple[int, dict]:
    zoo = spacezoo.get_space(args.space)
    seq = [zoo.boundary[lab] for lab in args.sequence.split(",")]
    radii = [float(r) for r in args.radii.split(",")]
    rep = converges_in_gp(
        seq, zoo.boundary[args.eta], radii,
        max_horizon=zoo.product_horizon, min_horizon=zoo.product_min_horizon,
    )
    return 0, {
        "schema": "convergence_report@1",
        "space": zoo.space_id,
        "eta": rep.eta,
        "sequence": list(rep.sequence),
        "rows": [
            {"r": r, "first_index": first, "states": list(states)}
            for r, first, states in rep.rows
        ],
        "converges": rep.converges,
    }


def cmd_continuity(args) -> tuple[int, dict]:
    zf = spacezoo.get_space(args.from_space)
    zt = spacezoo.get_space(args.to_space)
    cert = boundary_map_continuity_test(
        None, zf, zt, args.sequence.split(","), args.eta, args.r,
        max_horizon_from=zf.product_horizon, max_horizon_to=zt.product_horizon,
        min_horizon_from=zf.product_min_horizon,
        min_horizon_to=zt.product_min_horizon,
    )
    payload = {
        "schema": "continuity_certificate@1",
        "verdict": cert.verdict,
        "eta": cert.eta,
        "image_eta": cert.image_eta,
        "r": cert.r,
        "space_from": cert.space_from,
        "space_to": cert.space_to,
        "upstream_first_indices": [
            {"r": r, "first_index": first} for r, first, _ in cert.upstream.rows
        ],
        "image_products": [
            {"label": lab, "value": val} for lab, val in cert.image_products
        ],
        "outside_indices": list(cert.outside_indices),
        "upstream_schedule": list(cert.upstream_schedule),
    }
    return 0, payload


def cmd_spiral(args) -> tuple[int, dict]:
    zf = spacezoo.get_space(args.from_space)
    zt = spacezoo.get_space(args.to_space)
    if isinstance(zf.space, RayComplex) or isinstance(zt.space, RayComplex):
        raise BoundaryLabError("the shear map runs between annulus spaces")
    m = SpiralMap(zf.space, zt.space)
    p = parse_point(zf.space if args.direction == "forward" else zt.space, args.point)
    q = m.map_point(p, args.direction)
    if isinstance(q, AnnulusPoint):
        image = {"kind": "annulus", "t": q.t, "r": q.r}
    else:
        image = {"kind": "attached", "ray": q.ray_id, "s": q.s}
    return 0, {
        "schema": "spiral_map@1",
        "direction": args.direction,
        "image": image,
    }


def cmd_parse(args) -> tuple[int, dict]:
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    rc = compile_space(parse_space(text))
    return 0, {
        "schema": "parse_report@1",
        "space": rc.space_id,
        "edges": len(rc.edges),
        "lints": rc.lints,
        "canonical": serialize_space(rc) if args.emit_canonical else None,
    }


def cmd_paper_suite(args) -> tuple[int, dict]:
    keys = None if args.criteria == "all" else args.criteria.split(",")
    results = run_suite(seed=args.seed, keys=keys, echo=_eprint)
    payload = {
        "schema": "suite_report@1",
        "seed": args.seed,
        "results": [
            {
                "key": r.key,
                "title": r.title,
                "passed": r.passed,
                "elapsed_s": round(r.elapsed, 2),
            }
            for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    return (0 if payload["passed"] else 1), payload


def _eprint(*a):
    print(*a, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="boundary-lab",
        description="exact and numerical lab for contracting rays, Gromov "
        "products, and boundary topology on two families of geodesic spaces",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the JSON/CSV artifact here")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    p = add("dist", cmd_dist, help="distance between two points")
    p.add_argument("--space", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)

    p = add("gromov", cmd_gromov, help="three-point product at a basepoint")
    p.add_argument("--space", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)

    p = add("project", cmd_project, help="set-valued closest-point projection")
    p.add_argument("--space", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--target", required=True, help="comma-separated ray labels")
    p.add_argument("--horizon", type=float)
    p.add_argument("--tol", type=float)

    p = add("profile", cmd_profile, help="contraction profile of a ray")
    p.add_argument("--space", required=True)
    p.add_argument("--ray", required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--horizon", type=float)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = add("git", cmd_git, help="far-segment projection-diameter suite")
    p.add_argument("--space", required=True)
    p.add_argument("--ray", default="alpha")
    p.add_argument("--c", type=float, default=math.pi)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)

    p = add("escape", cmd_escape, help="last 2C-contact parameter of a ray pair")
    p.add_argument("--space", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--horizon", type=float)

    p = add("claim", cmd_claim, help="escape-time residual bounds for two classes")
    p.add_argument("--space", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--zeta", required=True)
    p.add_argument("--c-eta", type=float)
    p.add_argument("--c-zeta", type=float)
    p.add_argument("--horizon", type=float)
    p.add_argument("--seed", type=int, default=7)

    p = add("basis", cmd_basis, help="neighborhood-basis refinement check")
    p.add_argument("--space", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--seed", type=int, default=7)

    p = add("bproduct", cmd_bproduct, help="extended product of two classes")
    p.add_argument("--space", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--zeta", required=True, help="a label, or `all` for a matrix row")

    p = add("oracle", cmd_oracle, help="mesh-oracle cross-check of the kernel")
    p.add_argument("--space", required=True)
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--h", type=float, default=0.01)
    p.add_argument("--window", help="t_min,t_max,r_max containment window")

    p = add("converge", cmd_converge, help="first stable index per radius")
    p.add_argument("--space", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--radii", required=True)

    p = add("continuity", cmd_continuity, help="boundary-map continuity test")
    p.add_argument("--from-space", required=True)
    p.add_argument("--to-space", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--r", type=float, default=1.0)

    p = add("spiral", cmd_spiral, help="shear quasi-isometry on a point")
    p.add_argument("--from-space", required=True)
    p.add_argument("--to-space", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward")

    p = add("parse", cmd_parse, help="parse and compile a .space file")
    p.add_argument("--file", required=True)
    p.add_argument("--emit-canonical", action="store_true")

    p = add("paper-suite", cmd_paper_suite, help="run the acceptance suite")
    p.add_argument("--space", default="all", help="accepted for compatibility")
    p.add_argument("--criteria", default="all")
    p.add_argument("--seed", type=int, default=7)

    return ap


_CSV_ROWS = {
    "contraction_profile@1": ("rows", None),
    "convergence_report@1": ("rows", None),
    "suite_report@1": ("results", None),
    "continuity_certificate@1": ("image_products", None),
    "claim_report@1": ("rows", None),
    "product_matrix@1": ("rows", None),
    "product_estimate@1": ("rows", None),
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        code, payload = args.fn(args)
    except BoundaryLabError as err:
        print(write_json({"error": str(err)}, None))
        return 2
    except FileNotFoundError as err:
        print(write_json({"error": str(err)}, None))
        return 2
    if args.format == "csv":
        schema = payload.get("schema")
        spec = _CSV_ROWS.get(schema)
        if spec is None:
            print(write_json({"error": f"no CSV form for {schema}"}, None))
            return 2
        rows = payload[spec[0]]
        print(write_csv(rows, args.out), end="")
    else:
        print(write_json(payload, args.out))
    return code


if __name__ == "__main__":
    sys.exit(main())
