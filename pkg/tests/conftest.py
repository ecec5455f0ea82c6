import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "dualscope", deadline=None, derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("dualscope")

FERMAT = "X^3+Y^3+Z^3"
FERMAT_DUAL = "U^6 - 2*U^3*V^3 - 2*U^3*W^3 + V^6 - 2*V^3*W^3 + W^6"
QUARTIC = "X^4+Y^4-Z^4+X*Y*Z^2"
NODAL_QUINTIC = "t^5-2*t^4,2*t^5-5*t^4-2*t^3+6*t^2+t-3,1"


def full_contact(d):
    """Components of (t^d, f, 1) with f = t (t-1) ... (t-(d-2))."""
    import sympy as sp
    t = sp.Symbol("t")
    f = sp.expand(t * sp.prod([t - i for i in range(1, d - 1)]))
    return f"t^{d},{str(f).replace('**', '^')},1"


@pytest.fixture(scope="session")
def fermat():
    from dualscope import ImplicitCurve
    return ImplicitCurve(FERMAT)


@pytest.fixture(scope="session")
def quartic():
    from dualscope import ImplicitCurve
    return ImplicitCurve(QUARTIC)
