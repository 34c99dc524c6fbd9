"""Electric potential, integral coefficients and magnetic gauge potential.

A :class:`SystemSpec` pins one of the four implemented families:

* ``CASE_I``        sphere in elliptic coordinates, cubic f(q) = 4 prod(alpha_i - q),
                    electric potential h = mu (q1 + q2);
* ``CASE_II``       torus/quotient-sphere family built from an admissible quartic,
                    h = mu / (Q1 + Q2);
* ``CASE_II_LIMIT`` cylinder degeneration beta2 -> beta1 of CASE_II;
* ``VY``            the two-centre system on the unit sphere in e(3)* variables.

The magnetic density B is a constant for every family, and the coupling in the
second integral is always k = -4 B / a3, derived and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .elliptic import EllipticModel, LimitModel, build_model
from .errors import DegeneratePoint, NegativeRadicand
from .polyroots import QuarticParams

__all__ = [
    "Family",
    "SystemSpec",
    "case1_spec",
    "case2_spec",
    "case2_limit_spec",
    "vy_spec",
    "electric_h",
    "phi_components",
    "varphi",
    "gauge_a",
    "magnetic_density",
]


class Family(str, Enum):
    CASE_I = "case1"
    CASE_II = "case2"
    CASE_II_LIMIT = "case2_limit"
    VY = "vy"


@dataclass(frozen=True)
class SystemSpec:
    """Complete system definition; k is derived, never user-set."""

    family: Family
    mu: float = 0.0
    B: float = 0.0
    alpha: tuple[float, float, float] | None = None
    quartic: QuarticParams | None = None
    limit: LimitModel | None = None
    vy_a: float | None = None
    vy_b: float | None = None

    def __post_init__(self) -> None:
        if self.family == Family.CASE_I:
            if self.alpha is None or len(self.alpha) != 3:
                raise ValueError("CASE_I needs three elliptic-coordinate constants")
            a1, a2, a3 = self.alpha
            if not (a1 > a2 > a3):
                raise ValueError(f"alpha must be strictly descending, got {self.alpha}")
        elif self.family == Family.CASE_II:
            if self.quartic is None:
                raise ValueError("CASE_II needs QuarticParams")
        elif self.family == Family.CASE_II_LIMIT:
            if self.limit is None:
                raise ValueError("CASE_II_LIMIT needs a LimitModel")
        elif self.family == Family.VY:
            if self.vy_a is None or self.vy_b is None:
                raise ValueError("VY needs the two metric parameters")
            if not (self.vy_a > self.vy_b > 0.0):
                raise ValueError(f"VY requires vy_a > vy_b > 0, got ({self.vy_a}, {self.vy_b})")

    @property
    def a3(self) -> float:
        """Leading coefficient of the metric polynomial f (or P)."""
        if self.family == Family.CASE_I:
            return -4.0  # f(q) = 4 (alpha1-q)(alpha2-q)(alpha3-q)
        if self.family == Family.CASE_II:
            return self.quartic.a3
        if self.family == Family.CASE_II_LIMIT:
            return -1.0
        raise ValueError("VY has no polynomial leading coefficient")

    @property
    def k(self) -> float:
        """Coupling of the linear-in-momentum terms: k = -4 B / a3."""
        return -4.0 * self.B / self.a3

    def f_cubic(self, q):
        """CASE_I metric cubic f(q) = 4 (alpha1-q)(alpha2-q)(alpha3-q)."""
        a1, a2, a3 = self.alpha
        return 4.0 * (a1 - q) * (a2 - q) * (a3 - q)

    @cached_property
    def model(self) -> EllipticModel:
        if self.family != Family.CASE_II:
            raise ValueError("elliptic model only exists for CASE_II")
        return build_model(self.quartic)

    @cached_property
    def gauge_i1(self):
        """Antiderivative of Q1^2 used by the torus gauge (CASE_II)."""
        return self.model.q1_squared_antiderivative()


def case1_spec(alpha, mu: float = 0.0, B: float = 0.0) -> SystemSpec:
    return SystemSpec(family=Family.CASE_I, mu=mu, B=B, alpha=tuple(float(a) for a in alpha))


def case2_spec(quartic: QuarticParams, mu: float = 0.0, B: float = 0.0) -> SystemSpec:
    return SystemSpec(family=Family.CASE_II, mu=mu, B=B, quartic=quartic)


def case2_limit_spec(limit: LimitModel, mu: float = 0.0, B: float = 0.0) -> SystemSpec:
    return SystemSpec(family=Family.CASE_II_LIMIT, mu=mu, B=B, limit=limit)


def vy_spec(vy_a: float, vy_b: float, mu: float = 0.0, B: float = 0.0) -> SystemSpec:
    return SystemSpec(family=Family.VY, mu=mu, B=B, vy_a=vy_a, vy_b=vy_b)


def _uv(point):
    if hasattr(point, "u1"):
        return point.u1, point.u2
    a, b = point
    return a, b


def electric_h(spec: SystemSpec, point):
    """Electric potential h at a point.

    CASE_I takes (q1, q2) and returns mu (q1 + q2); CASE_II takes torus
    coordinates and returns mu / (Q1 + Q2) (denominator >= beta2 + beta3 > 0);
    CASE_II_LIMIT returns mu / (beta1 + Q2(u2)).
    """
    if spec.family == Family.CASE_I:
        q1v, q2v = _uv(point)
        return spec.mu * (q1v + q2v)
    if spec.family == Family.CASE_II:
        u1v, u2v = _uv(point)
        m = spec.model
        return spec.mu / (m.q1(u1v) + m.q2(u2v))
    if spec.family == Family.CASE_II_LIMIT:
        from .elliptic import limit_q2

        _, u2v = _uv(point)
        return spec.mu / (spec.limit.beta1 + limit_q2(spec.limit, u2v))
    raise ValueError(f"electric_h not defined for family {spec.family}")


def phi_components(spec: SystemSpec, point):
    """Coefficients of the momentum-linear part of the second integral.

    CASE_I (coordinates (q1, q2), q1 > q2 in the strip):

        phi1 = k sqrt(-f(q1) f(q2)) / (q1 - q2) = -phi2.

    CASE_II is evaluated in the regular torus form

        phi1 = 2 k Q2'(u2) / (Q1 - Q2),   phi2 = -2 k Q1'(u1) / (Q1 - Q2),

    which stays finite away from the four coordinate fixed points and vanishes
    at momenta-turning points where Q1' = Q2' = 0.
    """
    if spec.family == Family.CASE_I:
        q1v, q2v = _uv(point)
        radicand = -spec.f_cubic(q1v) * spec.f_cubic(q2v)
        if np.any(np.asarray(radicand) <= 0.0):
            raise NegativeRadicand(
                f"f(q1) f(q2) >= 0 somewhere at ({q1v}, {q2v}): outside the strip"
            )
        phi1 = spec.k * np.sqrt(radicand) / (q1v - q2v)
        return phi1, -phi1
    if spec.family == Family.CASE_II:
        u1v, u2v = _uv(point)
        m = spec.model
        x1 = m.q1(u1v)
        x2 = m.q2(u2v)
        gap = x1 - x2
        if np.any(np.abs(np.asarray(gap)) < 1e-9 * max(1.0, float(np.max(np.abs(x1))))):
            raise DegeneratePoint(f"x1 = x2 near ({u1v}, {u2v})")
        return 2.0 * spec.k * m.dq2(u2v) / gap, -2.0 * spec.k * m.dq1(u1v) / gap
    raise ValueError(f"phi_components not defined for family {spec.family}")


def varphi(spec: SystemSpec, point):
    """Scalar part of the second integral.

    CASE_I:  mu q1 q2 - k B (q1 + q2);
    CASE_II: -mu Q1 Q2 / (Q1 + Q2) - k B (Q1 + Q2)^2.
    """
    if spec.family == Family.CASE_I:
        q1v, q2v = _uv(point)
        return spec.mu * q1v * q2v - spec.k * spec.B * (q1v + q2v)
    if spec.family == Family.CASE_II:
        u1v, u2v = _uv(point)
        m = spec.model
        x1 = m.q1(u1v)
        x2 = m.q2(u2v)
        return -spec.mu * x1 * x2 / (x1 + x2) - spec.k * spec.B * (x1 + x2) ** 2
    raise ValueError(f"varphi not defined for family {spec.family}")


def gauge_a(spec: SystemSpec, point):
    """Torus gauge potential (CASE_II): A1 = 0 and

        A2(u1, u2) = B * (I1(u1) - u1 * Q2(u2)^2),  I1(u1) = integral_0^u1 Q1^2.

    By construction d1 A2 - d2 A1 = B (Q1^2 - Q2^2) pointwise.  The expression
    lives on the covering plane; it is not periodic in u1 (the total flux
    obstructs any global gauge on the torus).
    """
    if spec.family != Family.CASE_II:
        raise ValueError("gauge_a is defined for CASE_II only")
    u1v, u2v = _uv(point)
    m = spec.model
    a2 = spec.B * (spec.gauge_i1(u1v) - u1v * m.q2(u2v) ** 2)
    return 0.0, a2


def magnetic_density(spec: SystemSpec, metric_fn, gauge_fn, point, step: float = 1e-5):
    """Scalar magnetic density sqrt(g^11 g^22) (d1 A2 - d2 A1).

    ``metric_fn(point) -> MetricSample`` supplies the covariant components,
    which are inverted here (the density convention is contravariant);
    ``gauge_fn(point) -> (A1, A2)`` is differentiated by central differences.
    Constant for every built-in system.
    """
    u1v, u2v = _uv(point)
    sample = metric_fn(point)
    g11_cov, g22_cov = sample.g11, sample.g22
    if g11_cov <= 0.0 or g22_cov <= 0.0:
        raise DegeneratePoint(f"metric degenerate at ({u1v}, {u2v})")
    d1a2 = (gauge_fn((u1v + step, u2v))[1] - gauge_fn((u1v - step, u2v))[1]) / (2.0 * step)
    d2a1 = (gauge_fn((u1v, u2v + step))[0] - gauge_fn((u1v, u2v - step))[0]) / (2.0 * step)
    return (d1a2 - d2a1) / np.sqrt(g11_cov * g22_cov)
