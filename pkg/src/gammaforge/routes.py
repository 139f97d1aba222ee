"""Registry of Gamma evaluation routes with a common calling convention.

Every route returns an EvalResult holding Gamma(s).  Routes with a
restricted domain refuse arguments outside it unless ``reduce=True``, in
which case s is moved right by the recurrence and the result divided by
s (s+1) ... (s+n-1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from . import kernels
from .contours import gamma_hankel, recip_gamma_hankel, recip_gamma_laplace
from .errors import DomainError, NearIntegerError, PoleError
from .factorization import gamma_weierstrass
from .hurwitz import log_gamma_lerch
from .integral_reps import gamma_euler_integral, gamma_euler_log_form, log_gamma_malmsten
from .numerics import EvalResult, principal_log, reduce_to_right, rising_product
from .products import gamma_birkhoff, gamma_gauss

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Route:
    name: str
    fn: Callable[[complex, float], EvalResult]
    min_re: float | None  # open lower bound on Re s, None for the whole plane
    threshold: float  # where --reduce moves arguments that are out of domain
    product: bool = False
    summary: str = ""
    cut: bool = False  # also excludes the negative real axis

    def in_domain(self, s: complex) -> bool:
        if self.cut and s.imag == 0 and s.real <= 0:
            return False
        return self.min_re is None or s.real > self.min_re

    def domain_text(self) -> str:
        if self.min_re is not None:
            return f"Re s > {self.min_re:g}"
        return "s off the negative real axis" if self.cut else "s off the poles"


def _weierstrass(s, tol):
    return gamma_weierstrass(s, max(tol, 1e-9))


def _gauss(s, tol):
    return gamma_gauss(s, max(tol, 1e-12))


def _birkhoff(s, tol):
    n = min(1 << 16, max(64, math.ceil(1.0 / (12.0 * tol))))
    return gamma_birkhoff(s, n)


def _invert(r, method):
    if r.value == 0:
        raise PoleError(f"{method}: 1/Gamma vanishes, Gamma has a pole")
    value = 1.0 / r.value
    return EvalResult(value, r.err_estimate / abs(r.value) ** 2, method, r.work)


def _shift_down(fn):
    # The Hankel sums cancel like |Gamma(s)| once Re s is large (the
    # integrand is O(1) on the arc); evaluate at Re w in [1, 2) and
    # multiply back by w (w+1) ... (s-1).
    def wrapped(s, tol):
        m = max(0, math.floor(s.real - 1.0))
        r = fn(s - m, tol)
        if m == 0:
            return r
        d = rising_product(s - m, m)
        return EvalResult(r.value * d, r.err_estimate * abs(d), r.method, r.work)
    return wrapped


@_shift_down
def _hankel(s, tol):
    try:
        return gamma_hankel(s)
    except NearIntegerError:
        return _invert(recip_gamma_hankel(s), "hankel")


@_shift_down
def _recip_hankel(s, tol):
    return _invert(recip_gamma_hankel(s), "recip-hankel")


def _laplace(s, tol):
    # abscissa at the saddle point of e^z z^-s keeps cancellation down
    return _invert(recip_gamma_laplace(s, x=max(1.0, s.real), tol=tol), "laplace")


def _from_log(r, method):
    value = cmath.exp(r.value)
    return EvalResult(value, r.err_estimate * abs(value), method, r.work)


def _euler(s, tol):
    return gamma_euler_integral(s)


def _euler_log(s, tol):
    return gamma_euler_log_form(s)


def _malmsten_log(s):
    # the integrand decays like exp(-Re s t); near Re s = 0 use
    # log Gamma(s) = log Gamma(s + 1) - log s instead
    if s.real < 1.0:
        r = log_gamma_malmsten(s)
        return EvalResult(r.value - principal_log(s), r.err_estimate, r.method, r.work)
    return log_gamma_malmsten(s - 1.0)


def _malmsten(s, tol):
    return _from_log(_malmsten_log(s), "malmsten")


def _lerch(s, tol):
    return _from_log(log_gamma_lerch(s), "lerch")


REGISTRY: dict[str, Route] = {
    r.name: r
    for r in (
        Route("weierstrass", _weierstrass, None, 1.0, True, "tail-corrected Weierstrass product"),
        Route("gauss", _gauss, None, 1.0, True, "Euler-Gauss product, Richardson-accelerated"),
        Route("birkhoff", _birkhoff, None, 1.0, True, "Birkhoff limit phi(s+n+1)/(s)_(n+1)"),
        Route("hankel", _hankel, None, 1.0, False, "Hankel integral of z^(s-1) e^z"),
        Route("recip-hankel", _recip_hankel, None, 1.0, False, "Hankel integral for 1/Gamma, inverted"),
        Route("laplace", _laplace, 1.0, 2.0, False, "inverse Laplace line integral for 1/Gamma"),
        Route("euler-integral", _euler, 0.0, 1.0, False, "Euler integral of t^(s-1) e^-t"),
        Route("euler-log", _euler_log, 0.0, 1.0, False, "Euler integral of (log 1/t)^(s-1)"),
        Route("malmsten", _malmsten, 0.0, 1.0, False, "exp of the Binet-Malmsten log Gamma(s)"),
        Route("lerch", _lerch, None, 1.0, False, "exp of Lerch's log Gamma via Hurwitz zeta", cut=True),
    )
}

METHODS = tuple(REGISTRY)
PRODUCT_ROUTES = tuple(name for name, r in REGISTRY.items() if r.product)


def get_route(name: str) -> Route:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown method {name!r}; choose from {', '.join(METHODS)}") from None


def is_pole(s: complex) -> bool:
    s = complex(s)
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def _divide(r, s, n):
    if n == 0:
        return r
    d = rising_product(s, n)
    return EvalResult(r.value / d, r.err_estimate / abs(d), r.method, r.work)


def evaluate(method: str, s: complex, tol: float = DEFAULT_TOL, reduce: bool = False) -> EvalResult:
    """Gamma(s) by the named route."""
    route = get_route(method)
    s = complex(s)
    if is_pole(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    if route.in_domain(s):
        return route.fn(s, tol)
    if not reduce:
        raise DomainError(f"{method} needs {route.domain_text()}; pass --reduce "
                          "(reduce=True) to use the recurrence")
    z, n = reduce_to_right(s, route.threshold)
    return _divide(route.fn(z, tol), s, n)


def log_gamma(method: str, s: complex, tol: float = DEFAULT_TOL) -> complex:
    """log Gamma(s) through the named route, for Re s > 0.

    lerch and malmsten produce the logarithm directly.  Other routes take
    the principal log of Gamma at a base point w = s - m with Re w in
    [1, 2) and add log w + ... + log(w + m - 1), so large Re s never
    overflows.  The base-point log is principal, so the result is the
    analytic log Gamma only while |Im log Gamma(w)| < pi.
    """
    s = complex(s)
    if s.real <= 0:
        raise DomainError("log_gamma is provided for Re s > 0")
    if method == "lerch":
        return log_gamma_lerch(s).value
    if method == "malmsten":
        return _malmsten_log(s).value
    m = max(0, math.floor(s.real - 1.0))
    w = s - m
    base = principal_log(evaluate(method, w, tol).value)
    return base + kernels.shifted_log_sum(w, 0, m - 1)
