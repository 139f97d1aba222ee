"""Limit-product routes (Euler-Gauss, Birkhoff) and asymptotic diagnostics."""

from __future__ import annotations

import cmath
import functools
import math

from . import kernels
from .errors import ConvergenceError, PoleError
from .numerics import EvalResult, principal_log

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@functools.lru_cache(maxsize=32)
def euler_mascheroni(n: int = 1 << 20) -> float:
    """H_N - log N - 1/(2N), which undershoots gamma by about 1/(12 N^2) (< 1/(8 N^2))."""
    if n < 10:
        raise ValueError("N must be >= 10")
    return kernels.harmonic_sum(n) - math.log(n) - 0.5 / n


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def log_gauss_product_partial(s: complex, n: int) -> complex:
    """log f_n(s) = s log n - log s - sum_{k<=n} log(1 + s/k).

    The real part uses the same log1p formula for every s, so
    |f_n(x + iy)| <= f_n(x) holds exactly in floating point.
    """
    s = complex(s)
    if n < 1:
        raise ValueError("n must be >= 1")
    if _is_nonpositive_integer(s) and -s.real <= n:
        raise PoleError(f"f_{n} has a pole at s = {s.real:g}")
    x, y = s.real, s.imag
    log_s = complex(0.5 * math.log(x * x + y * y), math.atan2(y, x))
    return s * math.log(n) - log_s - kernels.log1p_ratio_sum(s, 1, n)


def gauss_product_partial(s: complex, n: int) -> complex:
    """f_n(s) = n! n^s / (s (s+1) ... (s+n))."""
    return cmath.exp(log_gauss_product_partial(s, n))


def gamma_gauss(s: complex, tol: float = 1e-10, n0: int = 32, n_cap: int = 1 << 20) -> EvalResult:
    """Richardson-accelerated limit of the Euler-Gauss partial products.

    log f_n(s) - log Gamma(s) expands in powers of 1/n, so each column of the
    table on n0, 2 n0, 4 n0, ... removes one more power.  Stops once two
    successive diagonal entries differ by less than ``tol`` (relative, as it
    is measured on the logarithm).
    """
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    x, y = s.real, s.imag
    log_s = complex(0.5 * math.log(x * x + y * y), math.atan2(y, x))
    n = n0
    partial = kernels.log1p_ratio_sum(s, 1, n)
    rows = [[s * math.log(n) - log_s - partial]]
    diff = math.inf
    while True:
        if n >= n_cap:
            best = EvalResult(cmath.exp(rows[-1][-1]), diff * abs(cmath.exp(rows[-1][-1])), "gauss", n)
            raise ConvergenceError(f"Gauss product did not converge to {tol:g} by n = {n}", best)
        partial += kernels.log1p_ratio_sum(s, n + 1, 2 * n)
        n *= 2
        row = [s * math.log(n) - log_s - partial]
        for m, prev in enumerate(rows[-1], start=1):
            factor = 2.0**m
            row.append(row[m - 1] + (row[m - 1] - prev) / (factor - 1.0))
        diff = abs(row[-1] - rows[-1][-1])
        rows.append(row)
        if diff < tol:
            value = cmath.exp(row[-1])
            return EvalResult(value, diff * abs(value), "gauss", n)


def _log_birkhoff(s, n):
    z = s + n + 1
    log_phi = _HALF_LOG_2PI + (z - 0.5) * principal_log(z) - z
    return log_phi - kernels.shifted_log_sum(s, 0, n)


def gamma_birkhoff(s: complex, n: int = 1 << 12) -> EvalResult:
    """phi(s+n+1) / (s (s+1) ... (s+n)) with phi(z) = sqrt(2 pi) z^(z-1/2) e^-z.

    The relative error behaves like 1/(12 n), so the change from n to 2n is
    half the error at n; ``err_estimate`` is twice that change.
    """
    s = complex(s)
    if n < 1:
        raise ValueError("n must be >= 1")
    if _is_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")
    value = cmath.exp(_log_birkhoff(s, n))
    doubled = cmath.exp(_log_birkhoff(s, 2 * n))
    return EvalResult(value, 2.0 * abs(doubled - value), "birkhoff", 3 * n)


def _log_gamma(route, s):
    from .routes import log_gamma

    return log_gamma(route, s)


def weierstrass_asymptotic_ratio(s: complex, n: int, gamma_route: str = "lerch") -> complex:
    """Gamma(s+n) / ((n-1)! n^s), evaluated in log space."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s = complex(s)
    if s == 0:
        return 1 + 0j
    return cmath.exp(_log_gamma(gamma_route, s + n) - math.lgamma(n) - s * math.log(n))


def laugwitz_rodewald_residual(s: complex, n: int, gamma_route: str = "lerch") -> complex:
    """log Gamma(s+n) - log Gamma(n) - s log(n+1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    s = complex(s)
    if s == 0:
        return 0j
    return _log_gamma(gamma_route, s + n) - math.lgamma(n) - s * math.log(n + 1)
