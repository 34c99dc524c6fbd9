import pytest

from monopole_lab import (
    build_model,
    case1_spec,
    case2_spec,
    from_roots,
    vy_spec,
)
from monopole_lab.elliptic import LimitModel
from monopole_lab.fields import case2_limit_spec


@pytest.fixture(scope="session")
def canonical_params():
    """P(x) = -(x-3)(x-2)(x+1)(x+4) = -x^4 + 15 x^2 - 10 x - 24."""
    return from_roots([3, 2, -1, -4], -1.0)


@pytest.fixture(scope="session")
def canonical_model(canonical_params):
    return build_model(canonical_params)


@pytest.fixture(scope="session")
def even_model():
    """Even quartic -(x^2-4)(x^2-1), roots (2, 1, -1, -2)."""
    return build_model(from_roots([2, 1, -1, -2], -1.0))


@pytest.fixture(scope="session")
def case2(canonical_params):
    return case2_spec(canonical_params, mu=1.0, B=0.5)


@pytest.fixture(scope="session")
def case1():
    return case1_spec((3.0, 2.0, 1.0), mu=1.0, B=0.5)


@pytest.fixture(scope="session")
def vy():
    return vy_spec(2.0, 1.0, mu=1.0)


@pytest.fixture(scope="session")
def limit_model():
    """beta1 = beta2 = 2, beta3 = -1, beta4 = -3: b = 8, c = 15, D = 4."""
    return LimitModel(beta1=2.0, beta3=-1.0, beta4=-3.0)


@pytest.fixture(scope="session")
def limit_spec(limit_model):
    return case2_limit_spec(limit_model, mu=1.0, B=0.6)
