import math

import numpy as np
import pytest

from monopole_lab import geometry as geo
from monopole_lab.errors import DegeneratePoint, NegativeRadicand
from monopole_lab.fields import (
    case1_spec,
    case2_spec,
    electric_h,
    gauge_a,
    magnetic_density,
    phi_components,
    varphi,
    vy_spec,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        case1_spec((1.0, 2.0, 3.0))  # wrong order
    with pytest.raises(ValueError):
        vy_spec(1.0, 2.0)  # needs vy_a > vy_b
    spec = case1_spec((3.0, 2.0, 1.0), B=0.5)
    assert spec.k * spec.a3 == -4.0 * spec.B
    assert spec.k == 0.5  # a3 = -4 for the alpha normalisation


def test_k_derived(case2):
    assert case2.k == pytest.approx(-4.0 * case2.B / case2.quartic.a3, rel=1e-15)
    assert case2.k == 2.0  # B = 0.5, a3 = -1


def test_electric_h_case2_fixed_point(case2, canonical_model):
    beta2 = canonical_model.beta[1]
    assert electric_h(case2, (0.0, 0.0)) == pytest.approx(case2.mu / (2 * beta2), rel=1e-14)


def test_electric_h_case2_supremum(case2, canonical_model):
    # denominator minimum beta2 + beta3 is attained at (0, K2) etc.
    m = canonical_model
    u1 = np.linspace(0, 4 * m.K1, 201)
    u2 = np.linspace(0, 4 * m.K2, 201)
    H = case2.mu / (m.q1(u1)[:, None] + m.q2(u2)[None, :])
    bound = case2.mu / (m.beta[1] + m.beta[2])
    assert np.max(np.abs(H)) <= bound + 1e-12
    assert electric_h(case2, (0.0, m.K2)) == pytest.approx(bound, rel=1e-14)


def test_electric_h_case1_quadratic_in_cartesian(case1):
    c = geo.NeumannConstants(case1.alpha)
    a1, a2, a3 = case1.alpha
    rng = np.random.default_rng(6)
    for _ in range(50):
        q1 = rng.uniform(a2, a1)
        q2 = rng.uniform(a3, a2)
        x = geo.neumann_to_cartesian(c, q1, q2, (1, 1, -1))
        quad = (a2 + a3) * x[0] ** 2 + (a1 + a3) * x[1] ** 2 + (a1 + a2) * x[2] ** 2
        assert electric_h(case1, (q1, q2)) == pytest.approx(case1.mu * quad, rel=1e-12)


def test_phi_case1_antisymmetry(case1):
    rng = np.random.default_rng(7)
    for _ in range(100):
        q1 = rng.uniform(2.05, 2.95)
        q2 = rng.uniform(1.05, 1.95)
        p1, p2 = phi_components(case1, (q1, q2))
        assert p1 + p2 == 0.0
        assert p1 > 0.0  # k > 0 on the strip with q1 > q2


def test_phi_case1_outside_strip(case1):
    with pytest.raises(NegativeRadicand):
        phi_components(case1, (2.8, 2.2))


def test_phi_case2_turning_points(case2, canonical_model):
    m = canonical_model
    assert phi_components(case2, (m.K1, m.K2)) == (0.0, -0.0)
    p1, p2 = phi_components(case2, (m.K1, 0.3 * m.K2))
    assert p1 != 0.0 and p2 == -0.0  # only Q1' vanishes at u1 = K1


def test_phi_case2_degenerate_point(case2):
    with pytest.raises(DegeneratePoint):
        phi_components(case2, (0.0, 0.0))


def test_varphi_values(case2, case1, canonical_model):
    beta2 = canonical_model.beta[1]
    nomu = case2_spec(case2.quartic, mu=0.0, B=case2.B)
    assert varphi(nomu, (0.0, 1e-6)) == pytest.approx(
        -nomu.k * nomu.B * (2 * beta2) ** 2, rel=1e-9
    )
    nomu1 = case1_spec(case1.alpha, mu=0.0, B=case1.B)
    assert varphi(nomu1, (2.5, 1.5)) == pytest.approx(-nomu1.k * nomu1.B * 4.0, rel=1e-14)


def test_varphi_gradient_consistency_case2(case2, canonical_model):
    # the displayed pair of first-order conditions reconstructs grad varphi:
    # d1 varphi = v1 d1 h + phi2 B lam, d2 varphi = v2 d2 h - phi1 B lam
    m = canonical_model
    rng = np.random.default_rng(12)
    h = 1e-6
    for _ in range(30):
        u1 = rng.uniform(0.2, 0.8) * m.K1
        u2 = rng.uniform(0.2, 0.8) * m.K2
        lam = geo.torus_metric(m, (u1, u2)).lam
        p1, p2 = phi_components(case2, (u1, u2))
        v1 = float(m.q2(u2)) ** 2
        v2 = float(m.q1(u1)) ** 2
        d1_varphi = (varphi(case2, (u1 + h, u2)) - varphi(case2, (u1 - h, u2))) / (2 * h)
        d2_varphi = (varphi(case2, (u1, u2 + h)) - varphi(case2, (u1, u2 - h))) / (2 * h)
        d1_h = (electric_h(case2, (u1 + h, u2)) - electric_h(case2, (u1 - h, u2))) / (2 * h)
        d2_h = (electric_h(case2, (u1, u2 + h)) - electric_h(case2, (u1, u2 - h))) / (2 * h)
        assert d1_varphi == pytest.approx(v1 * d1_h + p2 * case2.B * lam, abs=5e-8)
        assert d2_varphi == pytest.approx(v2 * d2_h - p1 * case2.B * lam, abs=5e-8)


def test_varphi_gradient_consistency_case1(case1):
    rng = np.random.default_rng(13)
    h = 1e-6
    f = case1.f_cubic
    for _ in range(30):
        q1 = rng.uniform(2.2, 2.8)
        q2 = rng.uniform(1.2, 1.8)
        p1, p2 = phi_components(case1, (q1, q2))
        root = math.sqrt(-f(q1) * f(q2)) / (q1 - q2)  # sqrt(g11 g22), contravariant
        d1_varphi = (varphi(case1, (q1 + h, q2)) - varphi(case1, (q1 - h, q2))) / (2 * h)
        d2_varphi = (varphi(case1, (q1, q2 + h)) - varphi(case1, (q1, q2 - h))) / (2 * h)
        d1_h = (electric_h(case1, (q1 + h, q2)) - electric_h(case1, (q1 - h, q2))) / (2 * h)
        d2_h = (electric_h(case1, (q1, q2 + h)) - electric_h(case1, (q1, q2 - h))) / (2 * h)
        assert d1_varphi == pytest.approx(q2 * d1_h + p2 * case1.B / root, abs=1e-7)
        assert d2_varphi == pytest.approx(q1 * d2_h - p1 * case1.B / root, abs=1e-7)


def test_gauge_vanishes_on_axis(case2, canonical_model):
    for u2 in (0.0, 0.7, 2.0, -1.3):
        assert gauge_a(case2, (0.0, u2)) == (0.0, 0.0)


def test_gauge_curl_is_flux_density(case2, canonical_model):
    m = canonical_model
    rng = np.random.default_rng(14)
    step = 1e-5
    for _ in range(100):
        u1 = rng.uniform(0.1, 3.9) * m.K1
        u2 = rng.uniform(0.1, 3.9) * m.K2
        d1a2 = (
            gauge_a(case2, (u1 + step, u2))[1] - gauge_a(case2, (u1 - step, u2))[1]
        ) / (2 * step)
        d2a1 = (
            gauge_a(case2, (u1, u2 + step))[0] - gauge_a(case2, (u1, u2 - step))[0]
        ) / (2 * step)
        expected = case2.B * float(geo.torus_lambda(m, u1, u2))
        assert abs(d1a2 - d2a1 - expected) < 1e-8


def test_gauge_not_periodic(case2, canonical_model):
    # nonzero total flux forbids a global gauge: A2 shifts across a period
    m = canonical_model
    u2 = 0.37 * m.K2
    shift = gauge_a(case2, (4 * m.K1, u2))[1] - gauge_a(case2, (0.0, u2))[1]
    assert abs(shift) > 0.1


def test_magnetic_density_constant(case2, canonical_model):
    m = canonical_model
    metric_fn = lambda p: geo.torus_metric(m, p)
    gauge_fn = lambda p: gauge_a(case2, p)
    rng = np.random.default_rng(15)
    for _ in range(64):
        u1 = rng.uniform(0.15, 0.85) * m.K1 + rng.choice([0.0, 2 * m.K1])
        u2 = rng.uniform(0.15, 0.85) * m.K2 + rng.choice([0.0, 2 * m.K2])
        val = magnetic_density(case2, metric_fn, gauge_fn, (u1, u2))
        assert abs(val - case2.B) < 1e-8


def test_magnetic_density_zero_and_linear(canonical_model, case2):
    m = canonical_model
    metric_fn = lambda p: geo.torus_metric(m, p)
    zero = case2_spec(case2.quartic, mu=1.0, B=0.0)
    val = magnetic_density(zero, metric_fn, lambda p: gauge_a(zero, p), (1.0, 1.0))
    assert val == 0.0
    double = case2_spec(case2.quartic, mu=1.0, B=2 * case2.B)
    v1 = magnetic_density(case2, metric_fn, lambda p: gauge_a(case2, p), (1.0, 1.0))
    v2 = magnetic_density(double, metric_fn, lambda p: gauge_a(double, p), (1.0, 1.0))
    assert v2 == pytest.approx(2.0 * v1, rel=1e-10)


def test_magnetic_density_bulk_grid(case2, canonical_model):
    # the standing assumption: constant density over the bulk, on a 64^2 grid
    m = canonical_model
    metric_fn = lambda p: geo.torus_metric(m, p)
    gauge_fn = lambda p: gauge_a(case2, p)
    u1 = np.linspace(0.2, 0.8, 64) * m.K1
    u2 = np.linspace(0.2, 0.8, 64) * m.K2
    worst = 0.0
    for a in u1[::8]:
        for b in u2[::8]:
            worst = max(worst, abs(magnetic_density(case2, metric_fn, gauge_fn, (a, b)) - case2.B))
    assert worst < 1e-8


def test_flux_density_in_strip_coordinates(case2, canonical_model):
    # the curl in torus coordinates, mapped through the slice Jacobians,
    # reproduces the strip-coordinate density 4B(x1^2-x2^2)/sqrt(-P(x1)P(x2));
    # this is a derived identity, not an independent definition
    from monopole_lab.polyroots import eval_p

    m = canonical_model
    rng = np.random.default_rng(18)
    for _ in range(50):
        u1 = rng.uniform(0.1, 0.9) * m.K1
        u2 = rng.uniform(0.1, 0.9) * m.K2
        x1, x2 = float(m.q1(u1)), float(m.q2(u2))
        curl_u = case2.B * (x1 * x1 - x2 * x2)
        jac = abs(float(m.dq1(u1)) * float(m.dq2(u2)))  # |d(x1,x2)/d(u1,u2)|
        curl_x = curl_u / jac
        expected = (
            4.0
            * case2.B
            * (x1 * x1 - x2 * x2)
            / math.sqrt(-eval_p(m.params, x1) * eval_p(m.params, x2))
        )
        assert curl_x == pytest.approx(expected, rel=1e-10)


def test_gauge_covariance_of_h_and_f(case2, canonical_model):
    # H and F written with A and with A + d(chi), chi = c1 u1 + c2 u2, agree
    # once p shifts by d(chi)
    m = canonical_model
    lam = lambda u1, u2: float(geo.torus_lambda(m, u1, u2))
    rng = np.random.default_rng(16)
    for _ in range(20):
        u1 = rng.uniform(0.2, 0.8) * m.K1
        u2 = rng.uniform(0.2, 0.8) * m.K2
        p = rng.normal(0, 1, 2)
        c = rng.normal(0, 1, 2)
        a = np.array(gauge_a(case2, (u1, u2)))
        H0 = float((p - a) @ (p - a)) / lam(u1, u2)
        H1 = float((p + c - (a + c)) @ (p + c - (a + c))) / lam(u1, u2)
        assert abs(H0 - H1) < 1e-10
