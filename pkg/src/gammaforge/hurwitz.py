"""Hurwitz zeta: direct series, continuation to Re t > -1, and Lerch's log Gamma.

The continuation is

    zeta(t, s) = s^(1-t)/(t-1) + s^(-t)/2 - t * I(t+1, s),
    I(p, s)    = int_0^inf (u - [u] - 1/2) (u + s)^(-p) du,

and differentiating at t = 0 gives

    d/dt zeta(t, s) |_{t=0} = (s - 1/2) log s - s - I(1, s).

``I`` is summed one unit interval at a time with a 16-node Gauss-Legendre
rule.  The sawtooth has mean zero on every interval, so the k-th term is
O(k^(-p-1)), and the remainder from interval K onward has the
Euler-Maclaurin expansion -f(K)/12 + f''(K)/720 - ..., f(u) = (u+s)^(-p),
which is added in closed form.
"""

from __future__ import annotations

import cmath
import functools
import math

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, PoleError
from .numerics import EvalResult, principal_log, principal_pow

_X16, _W16 = np.polynomial.legendre.leggauss(16)
_UNIT_X = 0.5 * (_X16 + 1.0)
_UNIT_W = 0.5 * _W16


def _check_s(s):
    if s.imag == 0 and s.real <= 0:
        raise DomainError(f"s = {s.real:g} lies on the closed negative real axis")


def _shift(s):
    """Number of unit steps taking s to Re s >= 1."""
    return max(0, math.ceil(1.0 - s.real))


def _sawtooth_tail(p, z):
    # remainder int_K^inf of the sawtooth against (u+s)^-p, z = K + s;
    # two Euler-Maclaurin terms plus the size of the third
    f0 = cmath.exp(-p * principal_log(z))
    f2 = p * (p + 1) * f0 / (z * z)
    f4 = (p + 2) * (p + 3) * f2 / (z * z)
    return -f0 / 12.0 + f2 / 720.0, abs(f4) / 30240.0


def _sawtooth_at(p, s, K):
    body = kernels.sawtooth_sum(p, s, 0, K - 1, _UNIT_X, _UNIT_W)
    tail, rem = _sawtooth_tail(p, K + s)
    return body + tail, rem


def sawtooth_integral(p: complex, s: complex, tol: float = 1e-13, K0: int = 64,
                      K_cap: int = 1 << 16) -> EvalResult:
    """I(p, s) for Re p > 0 and Re s >= 1 (no nearby singularity).

    The cutoff K doubles until the K and 2K values agree to ``tol`` and the
    next Euler-Maclaurin term is below it as well.
    """
    p, s = complex(p), complex(s)
    if p.real <= 0:
        raise DomainError("sawtooth integral needs Re p > 0")
    if s.real < 1:
        raise DomainError("sawtooth integral is evaluated at Re s >= 1 only")
    K = max(K0, 2 * math.ceil(abs(p)))
    prev, _ = _sawtooth_at(p, s, K)
    work = 16 * K
    while True:
        K *= 2
        cur, rem = _sawtooth_at(p, s, K)
        work += 16 * K
        err = abs(cur - prev) + rem
        if err <= tol * max(1.0, abs(cur)):
            return EvalResult(cur, err, "sawtooth", work)
        if K >= K_cap:
            raise ConvergenceError(f"sawtooth tail did not settle by K = {K}",
                                   EvalResult(cur, err, "sawtooth", work))
        prev = cur


def hurwitz_series(t: complex, s: complex, tol: float = 1e-12) -> EvalResult:
    """zeta(t, s) = sum_{k>=0} (s+k)^(-t), Re t > 1.

    The partial sum runs to K-1; the rest is replaced by the midpoint
    integral (K - 1/2 + s)^(1-t)/(t-1), whose error is about
    |t| |K - 1/2 + s|^(-t-1) / 24.  K doubles until that is below ``tol``.
    """
    t, s = complex(t), complex(s)
    if t.real <= 1:
        raise DomainError("the Hurwitz series needs Re t > 1")
    _check_s(s)
    K = 64
    while True:
        z = K - 0.5 + s
        log_z = principal_log(z)
        est = abs(t) * abs(cmath.exp(-(t + 1) * log_z)) / 24.0
        if est <= tol or K >= 1 << 24:
            break
        K *= 2
    if est > tol:
        raise ConvergenceError(f"Hurwitz series tail {est:.3g} above {tol:g}",
                               EvalResult(0j, est, "hurwitz-series", K))
    head = kernels.hurwitz_partial(t, s, 0, K - 1)
    tail = cmath.exp((1 - t) * log_z) / (t - 1)
    return EvalResult(head + tail, est, "hurwitz-series", K)


def hurwitz_continued(t: complex, s: complex, tol: float = 1e-12) -> EvalResult:
    """zeta(t, s) for Re t > -1, t != 1, through the sawtooth integral.

    Arguments with Re s < 1 are first moved right with
    zeta(t, s) = s^(-t) + zeta(t, s + 1).
    """
    t, s = complex(t), complex(s)
    if t == 1:
        raise PoleError("zeta(t, s) has a pole at t = 1")
    if t.real <= -1:
        raise DomainError("the continuation covers Re t > -1 only")
    _check_s(s)
    n = _shift(s)
    head = sum((principal_pow(s + k, -t) for k in range(n)), 0j)
    z = s + n
    log_z = principal_log(z)
    closed = cmath.exp((1 - t) * log_z) / (t - 1) + 0.5 * cmath.exp(-t * log_z)
    if t == 0:
        return EvalResult(head + closed, 0.0, "hurwitz-continued", n)
    saw = sawtooth_integral(t + 1, z, tol=tol / max(1.0, abs(t)))
    return EvalResult(head + closed - t * saw.value, abs(t) * saw.err_estimate,
                      "hurwitz-continued", n + saw.work)


def hurwitz_dt_at0(s: complex, tol: float = 1e-13) -> EvalResult:
    """d/dt zeta(t, s) at t = 0, i.e. (s - 1/2) log s - s - I(1, s).

    For Re s < 1 the value at s + n is used with the shift
    dt(s) = dt(s + n) - sum_{k<n} log(s + k), which keeps the branch that is
    analytic on the plane cut along the non-positive reals.
    """
    s = complex(s)
    _check_s(s)
    n = _shift(s)
    logs = sum((principal_log(s + k) for k in range(n)), 0j)
    z = s + n
    saw = sawtooth_integral(1.0, z, tol=tol)
    value = (z - 0.5) * principal_log(z) - z - saw.value - logs
    return EvalResult(value, saw.err_estimate, "hurwitz-dt0", n + saw.work)


@functools.lru_cache(maxsize=1)
def _zeta_prime_0():
    return hurwitz_dt_at0(1.0, tol=1e-15)


def zeta_prime_0() -> EvalResult:
    """zeta'(0) = d/dt zeta(t, 1) at t = 0 (equals -log(2 pi)/2); cached."""
    return _zeta_prime_0()


def log_gamma_lerch(s: complex, tol: float = 1e-13) -> EvalResult:
    """log Gamma(s) = d/dt zeta(t, s)|_{t=0} - zeta'(0), s off the cut."""
    s = complex(s)
    if s == 1:
        return EvalResult(0j, 0.0, "lerch", 0)
    dt = hurwitz_dt_at0(s, tol)
    z0 = zeta_prime_0()
    return EvalResult(dt.value - z0.value, dt.err_estimate + z0.err_estimate, "lerch", dt.work)
