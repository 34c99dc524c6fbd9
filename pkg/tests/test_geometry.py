import math

import numpy as np
import pytest

from monopole_lab import geometry as geo
from monopole_lab.elliptic import limit_q2
from monopole_lab.errors import (
    AxisPoint,
    ChartOverflow,
    DegenerateCoordinates,
    InterlacingViolated,
    NonPositiveCoordinate,
    StencilOutsideChart,
    WrongSignature,
)
from monopole_lab.polyroots import eval_p, eval_p_deriv, from_roots
from monopole_lab.elliptic import build_model

ALPHA = (3.0, 2.0, 1.0)


# --- separable form ----------------------------------------------------------

def test_stackel_metric_case1_positive():
    f = lambda q: 4.0 * (ALPHA[0] - q) * (ALPHA[1] - q) * (ALPHA[2] - q)
    s = geo.stackel_metric(f, 2.5, 1.5)
    assert s.g11 > 0.0 and s.g22 > 0.0


def test_stackel_metric_degenerate_and_signature():
    f = lambda q: 4.0 * (ALPHA[0] - q) * (ALPHA[1] - q) * (ALPHA[2] - q)
    with pytest.raises(DegenerateCoordinates):
        geo.stackel_metric(f, 1.5, 1.5)
    with pytest.raises(WrongSignature):
        geo.stackel_metric(f, 2.8, 2.2)  # f positive at both: same-sign failure


def test_stackel_equals_torus_through_jacobian(canonical_model):
    # with q = x^2 the separable function is f(q) = q P(sqrt(q)); pulling the
    # separable components back through u -> x -> q must reproduce lam
    m = canonical_model
    params = m.params
    f = lambda q: q * eval_p(params, np.sqrt(q))
    rng = np.random.default_rng(8)
    for _ in range(100):
        u1 = rng.uniform(0.05, 0.95) * m.K1
        u2 = rng.uniform(0.05, 0.95) * m.K2
        x1, x2 = float(m.q1(u1)), float(m.q2(u2))
        if x2 <= 0.05:  # q2 = x2^2 chart needs the positive part of the slice
            continue
        sample = geo.stackel_metric(f, x1**2, x2**2)
        lam = geo.torus_metric(m, (u1, u2)).lam
        # dq1/du1 = 2 x1 dx1/du1 = x1 sqrt(P(x1))
        dq1_du1 = x1 * math.sqrt(eval_p(params, x1))
        dq2_du2 = x2 * math.sqrt(-eval_p(params, x2))
        assert sample.g11 * dq1_du1**2 == pytest.approx(lam, rel=1e-9)
        assert sample.g22 * dq2_du2**2 == pytest.approx(lam, rel=1e-9)


# --- torus metric -------------------------------------------------------------

def test_torus_metric_fixed_points_and_endpoint(canonical_model):
    m = canonical_model
    for c in [(0.0, 0.0), (2 * m.K1, 0.0), (0.0, 2 * m.K2), (2 * m.K1, 2 * m.K2)]:
        assert geo.torus_metric(m, c).lam == 0.0
    assert geo.torus_metric(m, (m.K1, m.K2)).lam == pytest.approx(8.0, rel=1e-12)


def test_degeneracy_locus_scan(canonical_model):
    m = canonical_model
    n = 512
    u1 = np.linspace(0.0, 4 * m.K1, n, endpoint=False)
    u2 = np.linspace(0.0, 4 * m.K2, n, endpoint=False)
    lam = m.q1(u1)[:, None] ** 2 - m.q2(u2)[None, :] ** 2
    assert lam.min() >= 0.0
    centers = [(0.0, 0.0), (2 * m.K1, 0.0), (0.0, 2 * m.K2), (2 * m.K1, 2 * m.K2)]
    U1, U2 = np.meshgrid(u1, u2, indexing="ij")
    near = np.zeros_like(lam, dtype=bool)
    for c1, c2 in centers:
        d1 = np.minimum(np.abs(U1 - c1), 4 * m.K1 - np.abs(U1 - c1))
        d2 = np.minimum(np.abs(U2 - c2), 4 * m.K2 - np.abs(U2 - c2))
        near |= np.hypot(d1, d2) < 1e-2
    assert lam[~near].min() > 0.0


def test_sigma_equivariance_exact(canonical_model):
    m = canonical_model
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = (rng.uniform(0, 4 * m.K1), rng.uniform(0, 4 * m.K2))
        assert geo.torus_metric(m, p).lam == geo.torus_metric(m, (-p[0], -p[1])).lam


def test_lambda_lower_bound(canonical_model):
    # lam = (x1+x2)(x1-x2) with x1+x2 >= beta2+beta3 > 0
    m = canonical_model
    rng = np.random.default_rng(5)
    for _ in range(200):
        u1 = rng.uniform(0, 4 * m.K1)
        u2 = rng.uniform(0, 4 * m.K2)
        x1, x2 = float(m.q1(u1)), float(m.q2(u2))
        assert x1 + x2 >= m.beta[1] + m.beta[2] - 1e-12
        assert geo.torus_metric(m, (u1, u2)).lam == pytest.approx(
            (x1 + x2) * (x1 - x2), rel=1e-12, abs=1e-12
        )


# --- points and atlas -----------------------------------------------------------

def test_torus_point_canonical(canonical_model):
    m = canonical_model
    p = geo.torus_point(m, -1.0, 4.0 * m.K2 + 0.5)
    assert 0.0 <= p.u1 < 4 * m.K1 and 0.0 <= p.u2 < 4 * m.K2


def test_sphere_point_orbit_and_chart(canonical_model):
    m = canonical_model
    p = geo.torus_point(m, 3.0, 1.0)
    sp = geo.sphere_point(m, p)
    image = geo.torus_point(m, -3.0, -1.0)
    sp2 = geo.sphere_point(m, image)
    assert sp.rep == sp2.rep
    assert sp.chart == -1
    near = geo.sphere_point(m, geo.torus_point(m, 1e-3, 1e-3))
    assert near.chart == 0
    near2 = geo.sphere_point(m, geo.torus_point(m, 2 * m.K1 + 1e-3, 1e-3))
    assert near2.chart == 1


# --- curvature -----------------------------------------------------------------

def test_curvature_case1_constant(case1):
    assert geo.curvature_closed(case1) == 1.0


def test_curvature_case2_closed_vs_numeric(case2, canonical_model):
    m = canonical_model
    lam_fn = lambda a, b: float(geo.torus_lambda(m, a, b))
    rng = np.random.default_rng(17)
    for _ in range(200):
        u1 = rng.uniform(0.15, 0.85) * m.K1 + rng.choice([0.0, m.K1])
        u2 = rng.uniform(0.15, 0.85) * m.K2 + rng.choice([0.0, m.K2])
        kc = geo.curvature_closed(case2, (u1, u2))
        kn = geo.curvature_numeric(lam_fn, (u1, u2), h=1e-3)
        assert abs(kc - kn) < 1e-6


def test_curvature_case2_endpoint_value(case2, canonical_model):
    m = canonical_model
    # at (K1, K2): x1 = beta1, x2 = beta3, so K = 1/4 + a0/(8 (beta1+beta3)^3)
    assert geo.curvature_closed(case2, (m.K1, m.K2)) == pytest.approx(
        0.25 - 10.0 / (8.0 * 8.0), rel=1e-12
    )


def test_curvature_case2_a0_zero_constant():
    from monopole_lab.fields import case2_spec

    params = from_roots([2, 1, -1, -2], -1.0)
    spec = case2_spec(params, mu=0.0, B=0.0)
    m = spec.model
    vals = [
        geo.curvature_closed(spec, (0.3 * m.K1, 0.7 * m.K2)),
        geo.curvature_closed(spec, (0.8 * m.K1, 0.2 * m.K2)),
    ]
    assert vals[0] == vals[1] == 0.25


def test_curvature_case1_numeric(case1):
    conf = geo.conformal_case1(case1.alpha)
    lam_fn = lambda a, b: float(conf.lam(a, b))
    rng = np.random.default_rng(23)
    for _ in range(50):
        u1 = rng.uniform(0.2, 0.8) * conf.K1
        u2 = rng.uniform(0.2, 0.8) * conf.K2
        assert abs(geo.curvature_numeric(lam_fn, (u1, u2), h=1e-3) - 1.0) < 1e-6


def test_curvature_numeric_flat():
    assert geo.curvature_numeric(lambda a, b: 2.5, (0.1, 0.2)) == 0.0


def test_curvature_numeric_stencil_guard():
    with pytest.raises(StencilOutsideChart):
        geo.curvature_numeric(lambda a, b: a, (0.0, 0.0), h=0.5)


def test_curvature_ratio_identities(case1):
    # B/k and the two-point cubic combination both equal the constant curvature
    assert geo.curvature_flux_ratio(case1) == pytest.approx(1.0, rel=1e-14)
    rng = np.random.default_rng(2)
    for _ in range(20):
        q1 = rng.uniform(2.0, 3.0)
        q2 = rng.uniform(1.0, 2.0)
        assert geo.curvature_from_cubic_pair(case1, q1, q2) == pytest.approx(
            1.0, rel=1e-9
        )


# --- fixed point chart -----------------------------------------------------------

def test_fixed_point_chart_limit(canonical_model):
    m = canonical_model
    # local series x = beta2 + (P'(beta2)/16) u^2 forces the chart coefficient
    # limit P'(beta2) beta2 / 32
    limit = eval_p_deriv(m.params, m.beta[1]) * m.beta[1] / 32.0
    assert limit == pytest.approx(1.125, rel=1e-14)
    assert geo.fixed_point_chart(m, 0, 0.0).lam == pytest.approx(limit, rel=1e-14)
    for ang in (0.3, 2.0, 4.4):
        c3 = geo.fixed_point_chart(m, 0, 1e-3 * np.exp(1j * ang)).lam
        c4 = geo.fixed_point_chart(m, 0, 1e-4 * np.exp(1j * ang)).lam
        assert abs(c3 - limit) / limit < 1e-2
        assert abs(c4 - limit) / limit < 1e-3
        assert abs(c3 - c4) / limit < 1e-2  # convergence between radii


def test_fixed_point_chart_all_indices(canonical_model):
    m = canonical_model
    limit = eval_p_deriv(m.params, m.beta[1]) * m.beta[1] / 32.0
    for idx in range(4):
        got = geo.fixed_point_chart(m, idx, 1e-4 + 5e-5j).lam
        assert abs(got - limit) / limit < 1e-3


def test_fixed_point_chart_involution_consistency(canonical_model):
    m = canonical_model
    w = 1e-3 * np.exp(0.9j)
    z = np.sqrt(w)
    a = geo.torus_metric(m, (z.real, z.imag)).lam
    b = geo.torus_metric(m, (-z.real, -z.imag)).lam
    assert a == b
    assert geo.fixed_point_chart(m, 0, w).lam == pytest.approx(a / (4 * abs(w)), rel=1e-14)


def test_fixed_point_chart_overflow(canonical_model):
    m = canonical_model
    with pytest.raises(ChartOverflow):
        geo.fixed_point_chart(m, 0, 10.0 + 0j)


# --- area and flux ----------------------------------------------------------------

def test_round_sphere_area(case1):
    res = geo.area_and_flux(geo.NeumannConstants(case1.alpha), 0.5, 256)
    assert res["area"] == pytest.approx(4.0 * math.pi, abs=1e-6)
    assert res["flux_over_2pi"] == pytest.approx(1.0, abs=1e-6)
    assert res["nearest_integer"] == 1


def test_torus_area_convergence_and_sum_rule(canonical_model):
    a1 = geo.area_and_flux(canonical_model, 1.0, 128)["area"]
    a2 = geo.area_and_flux(canonical_model, 1.0, 256)["area"]
    assert abs(a1 - a2) / a2 < 1e-6
    # empirically exact sum rule: area = 32 pi / |a3|
    assert a2 == pytest.approx(32.0 * math.pi, rel=1e-9)
    other = build_model(from_roots([2.5, 1.5, -1.2, -2.8], -2.0))
    assert geo.area_and_flux(other, 1.0, 256)["area"] == pytest.approx(
        16.0 * math.pi, rel=1e-9
    )


def test_flux_linearity(canonical_model):
    f = lambda b: geo.area_and_flux(canonical_model, b, 128)["flux_over_2pi"]
    assert f(0.3) + f(0.4) == pytest.approx(f(0.7), abs=1e-10)
    assert f(2.0) == pytest.approx(2.0 * f(1.0), abs=1e-10)


def test_area_needs_resolution(canonical_model):
    with pytest.raises(ValueError):
        geo.area_and_flux(canonical_model, 1.0, 32)


# --- elliptic coordinates on the sphere -----------------------------------------

def test_neumann_identities():
    c = geo.NeumannConstants(ALPHA)
    rng = np.random.default_rng(31)
    a1, a2, a3 = ALPHA
    for _ in range(1000):
        q1 = rng.uniform(a2, a1)
        q2 = rng.uniform(a3, a2)
        signs = tuple(rng.choice([-1, 1], 3))
        x = geo.neumann_to_cartesian(c, q1, q2, signs)
        assert abs(float(x @ x) - 1.0) < 1e-12
        quad = (a2 + a3) * x[0] ** 2 + (a1 + a3) * x[1] ** 2 + (a1 + a2) * x[2] ** 2
        assert abs(q1 + q2 - quad) < 1e-12


def test_neumann_round_trip():
    c = geo.NeumannConstants(ALPHA)
    rng = np.random.default_rng(33)
    for _ in range(200):
        q1 = rng.uniform(2.05, 2.95)
        q2 = rng.uniform(1.05, 1.95)
        x = geo.neumann_to_cartesian(c, q1, q2, signs=(1, -1, 1))
        b1, b2 = geo.cartesian_to_neumann(c, x)
        assert abs(b1 - q1) + abs(b2 - q2) < 1e-10


def test_neumann_axis_degeneracy():
    c = geo.NeumannConstants(ALPHA)
    x = geo.neumann_to_cartesian(c, c.alpha[1], c.alpha[2], signs=(1, 1, 1))
    assert np.allclose(np.abs(x), [1.0, 0.0, 0.0], atol=1e-14)
    with pytest.raises(AxisPoint):
        geo.cartesian_to_neumann(c, np.array([0.0, 0.0, 1.0]))
    with pytest.raises(InterlacingViolated):
        geo.neumann_to_cartesian(c, 3.5, 1.5)


def test_neumann_pullback_matches_separable_form():
    # the round metric restricted to the coordinate strip is the separable
    # form with f = 4 prod(alpha - q): check via finite-difference Jacobians
    c = geo.NeumannConstants(ALPHA)
    a1, a2, a3 = ALPHA
    f = lambda q: 4.0 * (a1 - q) * (a2 - q) * (a3 - q)
    rng = np.random.default_rng(4)
    h = 1e-6
    for _ in range(20):
        q1 = rng.uniform(2.1, 2.9)
        q2 = rng.uniform(1.1, 1.9)
        sample = geo.stackel_metric(f, q1, q2)
        x_p = geo.neumann_to_cartesian(c, q1 + h, q2, (1, -1, 1))
        x_m = geo.neumann_to_cartesian(c, q1 - h, q2, (1, -1, 1))
        g11 = float(((x_p - x_m) / (2 * h)) @ ((x_p - x_m) / (2 * h)))
        x_p = geo.neumann_to_cartesian(c, q1, q2 + h, (1, -1, 1))
        x_m = geo.neumann_to_cartesian(c, q1, q2 - h, (1, -1, 1))
        g22 = float(((x_p - x_m) / (2 * h)) @ ((x_p - x_m) / (2 * h)))
        assert g11 == pytest.approx(sample.g11, rel=1e-5)
        assert g22 == pytest.approx(sample.g22, rel=1e-5)


# --- hyperbolic chart ----------------------------------------------------------

def test_hyperbolic_chart_basic():
    chart = geo.hyperbolic_chart(1.0, 1.0)
    assert (chart.u, chart.v) == (0.0, 2.0)
    assert chart.h_over_mu == 0.0
    assert chart.metric.lam == 0.25
    with pytest.raises(NonPositiveCoordinate):
        geo.hyperbolic_chart(-1.0, 1.0)


def test_hyperbolic_chart_potential_identity():
    rng = np.random.default_rng(9)
    for _ in range(50):
        q1 = rng.uniform(0.2, 3.0)
        m2 = rng.uniform(0.2, 3.0)
        chart = geo.hyperbolic_chart(q1, m2)
        assert chart.h_over_mu == pytest.approx(q1 - m2, rel=1e-12, abs=1e-12)


def test_hyperbolic_chart_metric_pullback():
    # separable form with f = 4 q^3 on the strip q1 > 0 > q2 pulled to (u, v)
    f = lambda q: 4.0 * q**3
    rng = np.random.default_rng(10)
    h = 1e-6
    for _ in range(100):
        q1 = rng.uniform(0.3, 2.5)
        m2 = rng.uniform(0.3, 2.5)
        sample = geo.stackel_metric(f, q1, -m2)
        c0 = geo.hyperbolic_chart(q1, m2)
        cp = geo.hyperbolic_chart(q1 + h, m2)
        cm = geo.hyperbolic_chart(q1 - h, m2)
        du, dv = (cp.u - cm.u) / (2 * h), (cp.v - cm.v) / (2 * h)
        g11 = (du * du + dv * dv) / c0.v**2
        cp = geo.hyperbolic_chart(q1, m2 + h)
        cm = geo.hyperbolic_chart(q1, m2 - h)
        du, dv = (cp.u - cm.u) / (2 * h), (cp.v - cm.v) / (2 * h)
        g22 = (du * du + dv * dv) / c0.v**2
        assert g11 == pytest.approx(sample.g11, rel=1e-6)
        assert g22 == pytest.approx(sample.g22, rel=1e-6)


# --- cylinder limit ---------------------------------------------------------------

def test_limit_cylinder_metric_at_symmetry_point(limit_model):
    lm = limit_model
    qt0 = lm.beta1 - 2.0 * lm.c / (math.sqrt(lm.D) + lm.b)
    expected = 16.0 * (lm.beta1**2 - qt0**2) / lm.c
    assert geo.limit_cylinder_metric(lm, (0.0, 0.0)).lam == pytest.approx(
        expected, rel=1e-14
    )
    assert qt0 == pytest.approx(float(limit_q2(lm, lm.delta)), rel=1e-14)


def test_limit_metric_decay(limit_model):
    lm = limit_model
    A = geo.limit_metric_decay_constant(lm)
    assert A == pytest.approx(8.0 * lm.beta1 * lm.c / math.sqrt(lm.D), rel=1e-14)
    for ut, tol in ((5.0, 1e-3), (7.0, 1e-4)):
        for sgn in (1.0, -1.0):
            qt = float(geo.limit_tilde_q2(lm, sgn * ut))
            ratio = (lm.beta1**2 - qt**2) * math.exp(2.0 * ut) / A
            assert abs(ratio - 1.0) < tol
    # the conformal factor carries the extra constant 16/c
    lam = geo.limit_cylinder_metric(lm, (0.0, 6.0)).lam
    qt = float(geo.limit_tilde_q2(lm, 6.0))
    assert lam == pytest.approx(16.0 * (lm.beta1**2 - qt**2) / lm.c, rel=1e-14)


def test_limit_decay_exponent_matches_round_cylinder(limit_model):
    # same e^(-2 u) falloff as the cylinder form 1/cosh(v)^2 of the round metric
    lm = limit_model
    lam = lambda u: geo.limit_cylinder_metric(lm, (0.0, u)).lam
    slope = math.log(lam(6.0) / lam(5.0))
    round_slope = math.log((1 / math.cosh(6.0) ** 2) / (1 / math.cosh(5.0) ** 2))
    assert slope == pytest.approx(-2.0, abs=1e-3)
    assert slope == pytest.approx(round_slope, abs=1e-3)
