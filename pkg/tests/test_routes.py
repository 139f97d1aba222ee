import cmath
import math

import pytest

from conftest import mp_gamma, mp_loggamma, rel
from gammaforge.errors import DomainError, PoleError
from gammaforge.routes import METHODS, PRODUCT_ROUTES, REGISTRY, evaluate, get_route, is_pole, log_gamma

# route -> relative accuracy it is expected to reach at default tol
ACCURACY = {
    "weierstrass": 1e-8, "gauss": 1e-10, "birkhoff": 2e-6, "hankel": 1e-11, "recip-hankel": 1e-9,
    "laplace": 1e-12, "euler-integral": 1e-10, "euler-log": 1e-9, "malmsten": 1e-12, "lerch": 1e-12,
}
POINTS = [0.5, 1.0, 2.5, 0.3 + 2j, 1.7 - 4j, 3.25 + 7.5j, 0.25 - 8j]


def test_registry_identifiers():
    assert METHODS == ("weierstrass", "gauss", "birkhoff", "hankel", "recip-hankel", "laplace",
                       "euler-integral", "euler-log", "malmsten", "lerch")
    assert set(PRODUCT_ROUTES) == {"weierstrass", "gauss", "birkhoff"}
    assert set(ACCURACY) == set(METHODS)


def test_unknown_route_lists_registry():
    with pytest.raises(KeyError, match="lerch"):
        get_route("stirling")


@pytest.mark.parametrize("method", METHODS)
def test_route_against_oracle(method):
    for s in POINTS:
        r = evaluate(method, s, reduce=True)
        assert r.method == method
        assert rel(r.value, mp_gamma(s)) < ACCURACY[method], s


@pytest.mark.parametrize("method", METHODS)
def test_reduce_reaches_left_half_plane(method):
    for s in (-0.5, -2.3 + 0.7j, -5.5 - 1j):
        assert rel(evaluate(method, s, reduce=True).value, mp_gamma(s)) < 10 * ACCURACY[method]


@pytest.mark.parametrize("method", [m for m, r in REGISTRY.items() if r.min_re is not None])
def test_restricted_routes_refuse_without_reduce(method):
    with pytest.raises(DomainError, match="--reduce"):
        evaluate(method, -0.5 + 1j)


def test_lerch_refuses_cut_without_reduce():
    with pytest.raises(DomainError):
        evaluate("lerch", -1.5)
    assert evaluate("lerch", -1.5, reduce=True).value == pytest.approx(4 * math.sqrt(math.pi) / 3, rel=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_poles(method):
    for n in (0, -1, -7):
        with pytest.raises(PoleError):
            evaluate(method, n, reduce=True)


def test_is_pole():
    assert is_pole(0) and is_pole(-3.0)
    assert not is_pole(-3 + 1e-300j) and not is_pole(1) and not is_pole(-2.5)


def test_hankel_delegates_at_integers():
    r = evaluate("hankel", 3)
    assert r.value == pytest.approx(2, rel=1e-12)
    assert r.method == "hankel"


def test_laplace_reduction_threshold():
    # Re s in (1, 2) sits close to the conditional-convergence edge; reduce moves it to >= 2
    s = 1.05 + 3j
    assert rel(evaluate("laplace", s).value, mp_gamma(s)) < 1e-10
    assert rel(evaluate("laplace", 0.2 + 3j, reduce=True).value, mp_gamma(0.2 + 3j)) < 1e-10


@pytest.mark.parametrize("method", ["lerch", "malmsten", "gauss", "hankel", "euler-integral"])
def test_log_gamma_routes(method):
    for s in (0.5, 2 + 3j, 30 - 2j, 140.5):
        assert abs(log_gamma(method, s) - mp_loggamma(s)) < 1e-8 * max(1.0, abs(mp_loggamma(s)))


def test_log_gamma_right_half_plane_only():
    with pytest.raises(DomainError):
        log_gamma("gauss", -1 + 1j)


def test_routes_never_overflow_into_nan():
    # Gamma(172.5) overflows binary64; the evaluation must raise, not return inf or nan
    assert evaluate("lerch", 171.5).value.real == pytest.approx(9.483367566824795e307, rel=1e-11)
    with pytest.raises(OverflowError):
        evaluate("lerch", 172.5)


@pytest.mark.parametrize("method", ["euler-integral", "euler-log", "malmsten", "laplace"])
@pytest.mark.parametrize("s", [1e-13 + 3.2643j, 2.2e-16 - 3.94j, 1e-6 + 1j, 0.01])
def test_near_left_edge_of_domain(method, s):
    # Re s -> 0+: the mass of t^(s-1) piles up at t = 0 and the Malmsten
    # integrand stops decaying, both of which once broke these routes
    assert rel(evaluate(method, s, reduce=True).value, mp_gamma(s)) < 1e-9
