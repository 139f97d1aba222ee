"""Real-axis integral representations: Euler, Binet-Malmsten, Gauss, Frullani."""

from __future__ import annotations

import cmath
import math
from dataclasses import replace

import numpy as np

from .errors import DomainError
from .numerics import EvalResult, QuadratureSpec, integrate, principal_log

_DEFAULT = QuadratureSpec(abs_tol=1e-15)
_TANH_SINH = QuadratureSpec(kind="tanh_sinh", level=14, abs_tol=1e-15)

# Four-term Taylor expansions in t of the full Malmsten and Gauss integrands
# (e^-t/t factor included), used below the cutoff.


def _malmsten_taylor(s, t):
    c0 = s * (s - 1) / 2
    c1 = -s * (s - 1) * (2 * s + 5) / 12
    c2 = s * (s - 1) * (s * s + 3 * s + 4) / 24
    c3 = -s * (s - 1) * (6 * s**3 + 21 * s * s + 31 * s + 31) / 720
    return c0 + t * (c1 + t * (c2 + t * c3))


def _gauss_taylor(s, t):
    c0 = (2 * s - 1) / 2
    c1 = -(6 * s * s + 6 * s - 5) / 12
    c2 = (2 * s**3 + 3 * s * s + s - 2) / 12
    c3 = -(30 * s**4 + 60 * s**3 + 30 * s * s - 31) / 720
    return c0 + t * (c1 + t * (c2 + t * c3))


def _cexpm1(z):
    """exp(z) - 1 for complex arrays without cancellation near z = 0."""
    a, b = z.real, z.imag
    re = np.expm1(a) * np.cos(b) - 2.0 * np.sin(0.5 * b) ** 2
    im = np.exp(a) * np.sin(b)
    return re + 1j * im


def _cutoff(s):
    return 1e-3 / max(1.0, abs(s))


def _series_end(s):
    # below this the cancelling numerators are summed as power series
    return min(1.0, 1.0 / max(1.0, abs(s)))


_SERIES_TERMS = 26


def _malmsten_numerator(s, t):
    """s (1 - e^-t) - (1 - e^-st), which is O(t^2), summed term by term.

    The k-th coefficient is (-1)^k s (s-1) (1 + s + ... + s^(k-2)) / k!.
    """
    total = np.zeros(t.shape, dtype=complex)
    h = 1.0 + 0j  # 1 + s + ... + s^(k-2)
    sk = 1.0 + 0j
    power = t * t / 2.0
    for k in range(2, _SERIES_TERMS):
        total += (-1) ** k * h * power
        sk *= s
        h += sk
        power = power * t / (k + 1)
    return s * (s - 1.0) * total


def _gauss_numerator(s, t):
    """(1 - e^-t) - t e^-st, also O(t^2): coefficients (-1)^(k+1) (1 - k s^(k-1)) / k!."""
    total = np.zeros(t.shape, dtype=complex)
    sk = s  # s^(k-1)
    power = t * t / 2.0
    for k in range(2, _SERIES_TERMS):
        total += (-1) ** (k + 1) * (1.0 - k * sk) * power
        sk *= s
        power = power * t / (k + 1)
    return total


def _truncation(rate):
    """End point T for a tail decaying like e^(-rate t)/t, and the neglected size."""
    rate = min(1.0, rate)
    T = max(40.0, 40.0 / rate)
    return T, math.exp(-rate * T) / (rate * T)


def _breaks(s, T):
    cut, ser = _cutoff(s), _series_end(s)
    return tuple(sorted({0.0, cut, ser, 1.0})) + (T,)


def _integrate_split(f, breaks, spec):
    """Integrate over consecutive pieces so no panel straddles a formula switch.

    On pieces longer than 1 the tolerance is taken per unit length; a long
    oscillating tail otherwise asks for less than the rounding in its phase.
    """
    value, err, work = 0j, 0.0, 0
    for a, b in zip(breaks, breaks[1:]):
        piece = spec if b - a <= 1.0 else replace(spec, abs_tol=spec.abs_tol * (b - a))
        res = integrate(f, a, b, piece)
        value += res.value
        err += res.err_estimate
        work += res.work
    return value, err, work


def _require(cond, msg):
    if not cond:
        raise DomainError(msg)


def gamma_euler_integral(s: complex, spec: QuadratureSpec | None = None) -> EvalResult:
    """Gamma(s) = int_0^inf t^(s-1) e^-t dt for Re s > 0.

    (delta, 1] goes to tanh-sinh (steep endpoint at delta), [1, T] to
    adaptive Gauss-Legendre with T = 40 + 5|s|; the neglected tail is
    bounded by e^-T T^Re(s) and added to the error estimate.  The sliver
    [0, delta] holds delta^Re(s) / Re(s) of the mass, too much for small
    Re s to leave to quadrature nodes, and is integrated term by term:
    sum_k (-1)^k delta^(s+k) / (k! (s+k)).
    """
    s = complex(s)
    _require(s.real > 0, "Euler integral needs Re s > 0; reduce the argument first")
    a = s - 1.0

    def f(t):
        return np.exp(a * np.log(t) - t)

    ts_spec = _TANH_SINH if spec is None else QuadratureSpec("tanh_sinh", max(spec.level, 14), spec.abs_tol)
    gl_spec = spec or _DEFAULT
    sliver = _euler_sliver(s, _SLIVER)
    head = integrate(f, _SLIVER, 1.0, ts_spec)
    T = 40.0 + 5.0 * abs(s)
    body = integrate(f, 1.0, T, gl_spec)
    tail = math.exp(-T) * T ** s.real
    return EvalResult(sliver + head.value + body.value, head.err_estimate + body.err_estimate + tail,
                      "euler-integral", head.work + body.work)


_SLIVER = 1e-6


def _euler_sliver(s, delta):
    """int_0^delta t^(s-1) e^-t dt from the exponential series."""
    total = 0j
    lead = cmath.exp(s * math.log(delta))
    term = 1.0  # (-delta)^k / k!
    for k in range(20):
        total += term / (s + k)
        term *= -delta / (k + 1)
        if abs(term) < 1e-18:
            break
    return lead * total


def gamma_euler_log_form(s: complex, spec: QuadratureSpec | None = None) -> EvalResult:
    """Gamma(s) = int_0^1 (log 1/t)^(s-1) dt for Re s > 0.

    Both ends can be singular, and tanh-sinh resolves a singularity only at
    the left endpoint, so the range is cut at 1/2: t runs over (0, 1/2] and
    u = 1 - t over (0, 1/2], where the integrand is (-log1p(-u))^(s-1).
    The first 1e-6 of the u range, where nearly all the mass sits for
    small Re s, becomes int_0^v v^(s-1) e^-v dv with v = -log(1 - 1e-6)
    and is summed as a series.
    """
    s = complex(s)
    _require(s.real > 0, "log-form Euler integral needs Re s > 0")
    a = s - 1.0

    def near_zero(t):
        return np.exp(a * np.log(-np.log(t)))

    def near_one(u):
        return np.exp(a * np.log(-np.log1p(-u)))

    spec = spec or _TANH_SINH
    if spec.kind != "tanh_sinh":
        spec = QuadratureSpec("tanh_sinh", max(spec.level, 14), spec.abs_tol)
    left = integrate(near_zero, 0.0, 0.5, spec)
    right = integrate(near_one, _SLIVER, 0.5, spec)
    sliver = _euler_sliver(s, -math.log1p(-_SLIVER))
    return EvalResult(left.value + right.value + sliver, left.err_estimate + right.err_estimate,
                      "euler-log", left.work + right.work)


def _malmsten_integrand(s):
    cut, ser = _cutoff(s), _series_end(s)

    def f(t):
        out = np.empty(t.shape, dtype=complex)
        small = t < cut
        series = (~small) & (t < ser)
        mid = (t >= ser) & (t < 1.0)
        big = t >= 1.0
        ts = t[small]
        out[small] = _malmsten_taylor(s, ts)
        tq = t[series]
        out[series] = _malmsten_numerator(s, tq) / (-np.expm1(-tq)) * np.exp(-tq) / tq
        tm = t[mid]
        ratio = _cexpm1(-s * tm) / np.expm1(-tm)
        out[mid] = (s - ratio) * np.exp(-tm) / tm
        tb = t[big]
        e1 = np.exp(-tb)
        out[big] = (s * e1 - (e1 - np.exp(-(s + 1.0) * tb)) / (-np.expm1(-tb))) / tb
        return out

    return f


def log_gamma_malmsten(s: complex, spec: QuadratureSpec | None = None) -> EvalResult:
    """log Gamma(s+1) = int_0^inf (s - (1-e^-st)/(1-e^-t)) e^-t/t dt, Re s > -1.

    Below t = 1e-3/max(1,|s|) the integrand is replaced by its four-term
    Taylor expansion (the removable singularity at 0 cancels badly); up to
    t = 1/max(1,|s|) the cancelling numerator is summed as a power series.
    The range ends at T where e^-(Re s + 1) T is negligible, and the
    neglected piece is added to the error estimate.
    """
    s = complex(s)
    _require(s.real > -1, "Malmsten formula needs Re s > -1")
    if s == 0:
        return EvalResult(0j, 0.0, "malmsten", 0)
    T, tail = _truncation(s.real + 1.0)
    value, err, work = _integrate_split(_malmsten_integrand(s), _breaks(s, T), spec or _DEFAULT)
    return EvalResult(value, err + (1.0 + abs(s)) * tail, "malmsten", work)


def _gauss_integrand(s):
    cut, ser = _cutoff(s), _series_end(s)

    def f(t):
        out = np.empty(t.shape, dtype=complex)
        small = t < cut
        series = (~small) & (t < ser)
        mid = (t >= ser) & (t < 1.0)
        big = t >= 1.0
        ts = t[small]
        out[small] = _gauss_taylor(s, ts)
        tq = t[series]
        out[series] = _gauss_numerator(s, tq) / (-np.expm1(-tq)) * np.exp(-tq) / tq
        tm = t[mid]
        b = tm * np.exp(-s * tm) / (-np.expm1(-tm))
        out[mid] = (1.0 - b) * np.exp(-tm) / tm
        tb = t[big]
        out[big] = np.exp(-tb) / tb - np.exp(-(s + 1.0) * tb) / (-np.expm1(-tb))
        return out

    return f


def digamma_gauss(s: complex, spec: QuadratureSpec | None = None) -> EvalResult:
    """psi(s+1) = int_0^inf (1 - t e^-st / (1-e^-t)) e^-t/t dt, Re s > -1."""
    s = complex(s)
    _require(s.real > -1, "Gauss formula needs Re s > -1")
    T, tail = _truncation(s.real + 1.0)
    value, err, work = _integrate_split(_gauss_integrand(s), _breaks(s, T), spec or _DEFAULT)
    return EvalResult(value, err + 2.0 * tail, "digamma-gauss", work)


def frullani_log(s: complex, spec: QuadratureSpec | None = None) -> EvalResult:
    """log s = int_0^inf (e^-t - e^-st)/t dt for Re s > 0."""
    s = complex(s)
    _require(s.real > 0, "Frullani integral needs Re s > 0")
    if s == 1:
        return EvalResult(0j, 0.0, "frullani", 0)
    a = s - 1.0

    def f(t):
        out = np.empty(t.shape, dtype=complex)
        small = t < 1.0
        ts = t[small]
        out[small] = -np.exp(-ts) * _cexpm1(-a * ts) / ts
        tb = t[~small]
        out[~small] = (np.exp(-tb) - np.exp(-s * tb)) / tb
        return out

    T, tail = _truncation(s.real)
    value, err, work = _integrate_split(f, (0.0, 1.0, T), spec or _DEFAULT)
    return EvalResult(value, err + 2.0 * tail, "frullani", work)


def gaussian_integral(spec: QuadratureSpec | None = None) -> EvalResult:
    """int_0^inf e^(-x^2) dx by direct quadrature (equals Gamma(1/2)/2)."""
    res = integrate(lambda x: np.exp(-x * x) + 0j, 0.0, math.inf, spec or _DEFAULT)
    return EvalResult(res.value, res.err_estimate, "gaussian", res.work)


def gaussian_integral_report(spec: QuadratureSpec | None = None) -> dict:
    """Quadrature value next to the closed forms it could be confused with.

    t = x^2 turns the integral into Gamma(1/2)/2 = sqrt(pi)/2, so the value
    is half of sqrt(pi); ``ratio_to_sqrt_pi`` makes that factor explicit.
    """
    res = gaussian_integral(spec)
    half_gamma = 0.5 * gamma_euler_integral(0.5).value.real
    value = res.value.real
    return {
        "value": value,
        "err_estimate": res.err_estimate,
        "half_gamma_half": half_gamma,
        "sqrt_pi": math.sqrt(math.pi),
        "ratio_to_sqrt_pi": value / math.sqrt(math.pi),
        "matches_half_gamma": abs(value - half_gamma) <= 1e-10,
        "matches_sqrt_pi": abs(value - math.sqrt(math.pi)) <= 1e-10,
        "note": "int_0^inf exp(-x^2) dx = Gamma(1/2)/2 = sqrt(pi)/2, not sqrt(pi)",
    }
