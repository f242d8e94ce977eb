import math
import random

import numpy as np
import pytest

import boundary_lab as bl
from boundary_lab.contraction import (
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
from boundary_lab.points import PathPolyline
from boundary_lab.samplers import profile_pair_sampler
from boundary_lab.suite import alpha_extremal_pairs, class_constants


# -- projections --------------------------------------------------------------

def test_project_point_on_ray(zoo_x8):
    X = zoo_x8.space
    alpha = X.edge_ray("alpha")
    res = project(X.point("alpha", 5), alpha, horizon=300)
    assert res.distance == 0
    assert res.intervals == ((alpha, 5, 5),)


def test_project_branch_tie_two_intervals(zoo_x8):
    X = zoo_x8.space
    rays = [X.edge_ray("alpha"), X.edge_ray("beta")]
    res = project(X.point("g3", 0), rays, horizon=300)
    assert res.distance == 8
    feet = {(ray.label, lo) for ray, lo, hi in res.intervals}
    assert feet == {("alpha", 3), ("beta", 3)}
    assert res.diameter(X) == 6


def test_project_annulus_radial_foot(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    res = project(A.pt(5.0, 32.0), alpha, horizon=100.0)
    assert float(res.distance) == pytest.approx(31.0, abs=1e-9)
    (ray, lo, hi), = res.intervals
    assert lo <= 5.0 <= hi and hi - lo < 0.01


def test_project_horizon_error(zoo_x8):
    X = zoo_x8.space
    with pytest.raises(bl.HorizonError):
        project(X.point("g3", 0), X.edge_ray("alpha"), horizon=2)


def test_projection_clamps_to_ray_origin(zoo_xcat12):
    A = zoo_xcat12.space
    beta_side = A.pt(-4.0, 3.0)
    alpha = zoo_xcat12.boundary["alpha"].canonical
    res = project(beta_side, alpha, horizon=50.0)
    (ray, lo, hi), = res.intervals
    assert lo == 0.0
    assert float(res.distance) == pytest.approx(A.distance(beta_side, A.basepoint), abs=1e-9)


# -- profiles -------------------------------------------------------------------

def test_profile_classifications(zoo_x8, zoo_xcat12):
    X = zoo_x8.space
    g5 = X.edge_ray("g5")
    prof = contraction_profile(
        g5, X, profile_pair_sampler(X, g5, horizon=2 ** 8), 150,
        horizon=2 ** 10, seed=5,
    )
    assert prof.classification == "bounded"

    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    prof2 = contraction_profile(
        alpha, A, profile_pair_sampler(A, alpha, horizon=60.0, r_min=0.02, r_max=512.0),
        3000, horizon=2048.0, seed=11, extra_pairs=alpha_extremal_pairs(A),
    )
    assert prof2.classification == "bounded"
    assert prof2.constant <= math.pi + 0.01


def test_profile_log_growth_with_witnesses(zoo_x16):
    X = zoo_x16.space
    alpha = X.edge_ray("alpha")
    witnesses = [(X.point(f"g{i}", 0), X.point("beta", i)) for i in range(4, 15)]
    prof = contraction_profile(
        alpha, X, profile_pair_sampler(X, alpha, horizon=2 ** 14), 200,
        horizon=2 ** 17, seed=3, extra_pairs=witnesses,
    )
    assert prof.classification == "sublinear"
    for i in range(4, 15):
        assert prof.bins[i] >= i
        assert 0.5 <= float(prof.bins[i]) / i <= 2.5


def test_profile_bounded_witness_inequality(zoo_xcat12):
    # every recorded witness of a bounded profile satisfies diam <= C
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    prof = contraction_profile(
        alpha, A, profile_pair_sampler(A, alpha, horizon=40.0, r_max=128.0),
        800, horizon=600.0, seed=1, extra_pairs=alpha_extremal_pairs(A, 7),
    )
    assert prof.classification == "bounded"
    for _, (_, _, diam) in prof.witnesses.items():
        assert diam <= prof.constant + 1e-12


def test_profile_rejects_bad_witness(zoo_x8):
    X = zoo_x8.space
    alpha = X.edge_ray("alpha")
    far = (X.point("g3", 0), X.point("g3", 100))  # d(x,y) >> d(x, alpha)
    with pytest.raises(bl.DomainError):
        contraction_profile(
            alpha, X, profile_pair_sampler(X, alpha, horizon=2 ** 6), 5,
            horizon=2 ** 9, seed=0, extra_pairs=[far],
        )


def test_strong_contraction_results(zoo_x16, zoo_xcat12):
    X = zoo_x16.space
    alpha = X.edge_ray("alpha")
    witnesses = [(X.point(f"g{i}", 0), X.point("beta", i)) for i in range(4, 15)]
    res = strong_contraction_constant(
        alpha, X, profile_pair_sampler(X, alpha, horizon=2 ** 14), 200,
        horizon=2 ** 17, seed=3, extra_pairs=witnesses,
    )
    assert res.status == "not_bounded"
    x, y, diam = res.witness
    assert diam >= 10  # large diameter witness at large radius

    g4 = zoo_xcat12.boundary["g4"].canonical
    A = zoo_xcat12.space
    res2 = strong_contraction_constant(
        g4, A, profile_pair_sampler(A, g4, horizon=100.0, r_max=512.0), 600,
        horizon=4096.0, seed=2,
    )
    assert res2.status == "bounded" and res2.constant > 0


# -- geodesic image property ------------------------------------------------------

def test_git_far_segment_passes(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    seg = A.geodesic_polyline(A.pt(-20, 2.0), A.pt(-9, 4.0), 64)
    res = git_check(alpha, seg, math.pi, horizon=100.0)
    assert res.passed and res.min_gap >= 2 * math.pi


def test_git_rejects_close_segments(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    seg = A.geodesic_polyline(A.pt(1.0, 1.0), A.pt(3.0, 1.0), 8)
    with pytest.raises(bl.DomainError):
        git_check(alpha, seg, math.pi, horizon=50.0)


def test_git_random_suite(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    rng = random.Random(12)
    C = math.pi
    done = 0
    while done < 60:
        th1 = rng.uniform(-30, 30)
        th2 = th1 + rng.uniform(-8, 8)
        r1 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50)))
        r2 = 1.0 + math.exp(rng.uniform(math.log(0.2), math.log(50)))
        seg = A.geodesic_polyline(A.pt(th1, r1), A.pt(th2, r2), 48)
        try:
            res = git_check(alpha, seg, C, horizon=200.0)
        except bl.DomainError:
            continue
        assert res.passed
        done += 1


# -- asymptoty ----------------------------------------------------------------------

def test_asymptotic_same_ray(zoo_xcat12):
    alpha = zoo_xcat12.boundary["alpha"].canonical
    v = asymptotic_check(alpha, alpha, math.pi, horizon=200.0)
    assert v.status == "asymptotic" and v.sup == 0.0


def test_alpha_beta_divergent(zoo_x8):
    v = asymptotic_check(
        zoo_x8.boundary["alpha"].canonical, zoo_x8.boundary["beta"].canonical,
        C=4.0, horizon=200.0,
    )
    assert v.status == "divergent"


def test_same_class_reps_asymptotic(zoo_x8, zoo_xcat12):
    g3 = zoo_x8.boundary["g3"]
    v = asymptotic_check(g3.canonical, g3.auxiliaries[0], C=2.0, horizon=200.0)
    assert v.status == "asymptotic"
    g5 = zoo_xcat12.boundary["g5"]
    v2 = asymptotic_check(g5.canonical, g5.auxiliaries[0], C=math.pi, horizon=400.0)
    assert v2.status == "asymptotic"
    assert v2.within_5c  # empirical 5C note, recorded but never asserted as a bound


def test_alpha_vs_branch_divergent(zoo_xcat12):
    v = asymptotic_check(
        zoo_xcat12.boundary["alpha"].canonical,
        zoo_xcat12.boundary["g6"].canonical,
        C=math.pi, horizon=800.0,
    )
    assert v.status == "divergent"


# -- escape times ----------------------------------------------------------------------

def test_escape_beta_vs_alpha_closed_form(zoo_xcat12):
    # d(beta(t), alpha) = t, so the 2C level is crossed exactly once at 2C
    alpha = zoo_xcat12.boundary["alpha"].canonical
    beta = zoo_xcat12.boundary["beta"].canonical
    et = t_first_escape(alpha, beta, math.pi, horizon=100.0)
    assert et.value == pytest.approx(2 * math.pi, abs=1e-6)
    assert et.bracket[0] <= et.value <= et.bracket[1]


def test_escape_invariants(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    g6 = zoo_xcat12.boundary["g6"].canonical
    C = math.pi
    et = t_first_escape(alpha, g6, C, horizon=400.0)
    d_at_T = ray_distance(g6.eval(et.value), alpha, None)[0]
    assert d_at_T == pytest.approx(2 * C, abs=1e-6)
    for t in np.linspace(et.value + 0.5, 400.0, 40):
        assert ray_distance(g6.eval(float(t)), alpha, None)[0] > 2 * C


def test_escape_monotone_in_constant(zoo_xcat12):
    # the level sets of an eventually increasing distance move outward, so
    # a larger constant gives a later (or equal) last crossing
    alpha = zoo_xcat12.boundary["alpha"].canonical
    beta = zoo_xcat12.boundary["beta"].canonical
    values = [
        t_first_escape(alpha, beta, c, horizon=200.0).value
        for c in (1.0, 2.0, math.pi, 5.0)
    ]
    assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))


def test_escape_errors(zoo_xcat12):
    alpha = zoo_xcat12.boundary["alpha"].canonical
    beta = zoo_xcat12.boundary["beta"].canonical
    with pytest.raises(bl.DomainError):
        t_first_escape(alpha, alpha, math.pi, horizon=100.0)
    with pytest.raises(bl.HorizonError):
        t_first_escape(alpha, beta, math.pi, horizon=3.0)  # still inside at horizon


# -- residual checks ----------------------------------------------------------------------

def test_claim_same_ray_reps_zero_eta_residual(zoo_xcat12):
    alpha = zoo_xcat12.boundary["alpha"].canonical
    g5 = zoo_xcat12.boundary["g5"]
    rep = claim_check(
        [alpha, alpha], g5.representatives(), math.pi, math.pi, horizon=400.0
    )
    assert rep.residual_t_under_eta_change == 0.0
    assert rep.passed


def test_claim_alpha_vs_branch(zoo_xcat12):
    table = class_constants(zoo_xcat12, seed=7)
    rep = claim_check(
        zoo_xcat12.boundary["alpha"].representatives(),
        zoo_xcat12.boundary["g5"].representatives(),
        table["alpha"], table["g5"], horizon=50.0 * table["alpha"] + 100.0,
    )
    assert rep.passed
    assert rep.boundary_product == pytest.approx(5.0, abs=0.01)


def test_claim_needs_two_reps(zoo_xcat12):
    alpha = zoo_xcat12.boundary["alpha"]
    with pytest.raises(bl.DomainError):
        claim_check([alpha.canonical], alpha.representatives(), 1.0, 1.0, 100.0)


def test_basis_single_point_boundary_vacuous(zoo_xcat12):
    alpha = zoo_xcat12.boundary["alpha"]
    rep = neighborhood_basis_check(
        alpha, 3.0, [alpha], {"alpha": math.pi}, horizon=1000.0
    )
    assert rep.passed
    assert rep.rows[0][3] == ("alpha",)


def test_basis_requires_constants(zoo_xcat12):
    pts = [zoo_xcat12.boundary["alpha"], zoo_xcat12.boundary["g3"]]
    with pytest.raises(bl.DomainError):
        neighborhood_basis_check(pts[0], 1.0, pts, {"alpha": 1.0}, horizon=100.0)


# -- quasi-geodesic deviation ----------------------------------------------------------------

def test_morse_subsegment(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    poly = PathPolyline.from_points(
        [A.pt(t, 1.0) for t in np.linspace(2, 9, 12)], A
    )
    res = morse_witness(alpha, poly, 1.0, 0.0, horizon=100.0)
    assert res.deviation == 0.0


def test_morse_detour_height(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    D, T = 3.0, 12.0
    pts = [A.pt(0, 1.0), A.pt(0, 1.0 + D)]
    pts += [A.pt(t, 1.0 + D) for t in np.linspace(0.3, T - 0.3, 40)]
    pts += [A.pt(T, 1.0 + D), A.pt(T, 1.0)]
    poly = PathPolyline.from_points(pts, A)
    lam = (2 * D + (1 + D) * T) / T + 0.5
    res = morse_witness(alpha, poly, lam, 1.0, horizon=100.0)
    assert res.deviation == pytest.approx(D, abs=1e-9)


def test_morse_connector_detour(zoo_x8):
    X = zoo_x8.space
    i = 5
    out = X.geodesic(X.point("alpha", 0), X.point("g5", 0)).witness
    back = X.geodesic(X.point("g5", 0), X.point("alpha", 2 * i)).witness
    pts = list(out.points) + list(back.points)[1:]
    poly = PathPolyline.from_points(pts, X)
    # certify constants from the polyline's own worst pairs
    lam = 1.0
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            du = float(poly.cumulative[b] - poly.cumulative[a])
            d = float(X.distance(pts[a], pts[b]))
            if d >= 1:
                lam = max(lam, du / d)
    eps = 0.0
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            du = float(poly.cumulative[b] - poly.cumulative[a])
            eps = max(eps, du / lam - float(X.distance(pts[a], pts[b])))
    res = morse_witness(X.edge_ray("alpha"), poly, lam, eps + 0.1, horizon=500)
    assert res.deviation == 2 ** i
    assert lam >= (2 ** (i + 1) + 2 * i) / (4 * i)  # only huge constants certify it


def test_morse_rejects_false_constants(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    pts = [A.pt(0, 1.0), A.pt(0, 4.0), A.pt(6, 4.0), A.pt(6, 1.0)]
    poly = PathPolyline.from_points(pts, A)
    with pytest.raises(bl.DomainError):
        morse_witness(alpha, poly, 1.0, 0.0, horizon=100.0)


def test_morse_endpoints_must_lie_on_ray(zoo_xcat12):
    A = zoo_xcat12.space
    alpha = zoo_xcat12.boundary["alpha"].canonical
    poly = PathPolyline.from_points([A.pt(0, 2.0), A.pt(3, 2.0)], A)
    with pytest.raises(bl.DomainError):
        morse_witness(alpha, poly, 4.0, 4.0, horizon=100.0)
