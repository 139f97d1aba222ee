"""Weierstrass products, the difference-equation solver, growth estimators."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import ConvergenceError, DivergenceError, EstimationError, PoleError
from .numerics import EvalResult, Polynomial, poly_shift, principal_log
from .products import euler_mascheroni


@dataclass(frozen=True)
class AlgebraicTail:
    """Infinite run of divisor points rho_n = scale * n**power, n >= start."""

    scale: complex
    power: float
    start: int = 1
    multiplicity: int = 1

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError("tail power must be positive")
        if self.multiplicity == 0:
            raise ValueError("multiplicity must be nonzero")
        if self.start < 1:
            raise ValueError("tail must start at n >= 1")

    def location(self, n: int) -> complex:
        return complex(self.scale) * float(n) ** self.power

    @property
    def convergence_exponent(self) -> float:
        return 1.0 / self.power


@dataclass(frozen=True)
class Divisor:
    """Zeros (positive multiplicity) and poles (negative) of a product."""

    entries: tuple = field(default_factory=tuple)
    tail: AlgebraicTail | None = None

    def __post_init__(self):
        locs = [complex(loc) for loc, _ in self.entries]
        if len(set(locs)) != len(locs):
            raise ValueError("divisor locations must be distinct")
        if any(int(m) == 0 for _, m in self.entries):
            raise ValueError("multiplicities must be nonzero")
        object.__setattr__(self, "entries", tuple((complex(l), int(m)) for l, m in self.entries))

    def multiplicity_at(self, s: complex) -> int:
        for loc, m in self.entries:
            if loc == s:
                return m
        if self.tail is not None:
            t = self.tail
            ratio = complex(s) / complex(t.scale)
            if ratio.imag == 0 and ratio.real > 0:
                n = round(ratio.real ** (1.0 / t.power))
                if n >= t.start and t.location(n) == s:
                    return t.multiplicity
        return 0


@dataclass(frozen=True)
class ContinuedProductResult:
    value: complex
    terms_used: int
    tail_estimate: float

    def __post_init__(self):
        if not self.tail_estimate >= 0:
            raise ValueError("tail_estimate must be non-negative")


def gamma_divisor() -> Divisor:
    """Zeros of 1/Gamma away from the origin: rho_n = -n, n >= 1."""
    return Divisor((), AlgebraicTail(-1.0, 1.0, 1, 1))


def elementary_factor(p: int, w: complex) -> complex:
    """Weierstrass factor E_p(w) = (1 - w) exp(w + w**2/2 + ... + w**p/p)."""
    if p < 0:
        raise ValueError("p must be >= 0")
    w = complex(w)
    expo = sum(w**j / j for j in range(1, p + 1))
    return (1 - w) * cmath.exp(expo)


def _log_elementary(p, w):
    if w == 1:
        return None
    return principal_log(1 - w) + sum(w**j / j for j in range(1, p + 1))


def divisor_genus(alpha: float, converges_at_exponent: bool = False) -> int:
    """Smallest p >= 0 with sum |rho|**-(p+1) finite.

    ``alpha`` is the convergence exponent.  When it is an integer the answer
    depends on whether the series at exactly ``alpha`` converges; the default
    (divergent) matches rho_n = -n, where sum 1/n diverges.
    """
    if alpha <= 0:
        raise ValueError("convergence exponent must be positive")
    if float(alpha).is_integer():
        a = int(alpha)
        return a - 1 if converges_at_exponent else a
    return math.ceil(alpha) - 1


def canonical_product(d: Divisor, p: int, s: complex, tol: float = 1e-10,
                      max_terms: int = 1 << 22) -> ContinuedProductResult:
    """Truncated canonical product prod E_p(s/rho)**m over a divisor.

    Finite entries are multiplied exactly.  For an algebraic tail the
    neglected factors are summed in log space from the leading term
    -(s/rho)**(p+1)/(p+1) (integral approximation), and ``tail_estimate``
    bounds the next order.  The tail is doubled until that bound is below
    ``tol``.
    """
    s = complex(s)
    if p < 0:
        raise ValueError("p must be >= 0")
    m_here = d.multiplicity_at(s) if s != 0 else 0
    if m_here > 0:
        return ContinuedProductResult(0j, 0, 0.0)
    if m_here < 0:
        raise PoleError(f"s = {s} is a pole of the product")
    if s == 0:
        return ContinuedProductResult(1 + 0j, 0, 0.0)

    log_total = 0j
    for loc, m in d.entries:
        log_total += m * _log_elementary(p, s / loc)
    terms = len(d.entries)

    tail = d.tail
    if tail is None:
        return ContinuedProductResult(cmath.exp(log_total), terms, 0.0)

    q = tail.power * (p + 1)
    if q <= 1.0:
        raise DivergenceError(
            f"genus {p} too small: sum |rho|^-{p + 1} diverges for rho_n ~ n^{tail.power}")

    scale = complex(tail.scale)
    mult = tail.multiplicity
    n_hi = max(tail.start, 64)
    partial = kernels.log_ep_sum(s, scale, tail.power, p, tail.start, n_hi)
    while True:
        # sum_{n>N} (s/rho_n)^(p+1) ~ (s/scale)^(p+1) (N+1/2)^(1-q) / (q-1)
        lead = -((s / scale) ** (p + 1)) / (p + 1) * (n_hi + 0.5) ** (1.0 - q) / (q - 1.0)
        q2 = tail.power * (p + 2)
        nxt = abs(s / scale) ** (p + 2) / (p + 2) * (n_hi + 0.5) ** (1.0 - q2) / (q2 - 1.0)
        quad_err = abs(s / scale) ** (p + 1) * q * (n_hi + 0.5) ** (-q - 1.0) / 24.0
        estimate = 2.0 * (nxt + quad_err)
        if estimate < tol or n_hi >= max_terms:
            break
        new_hi = 2 * n_hi
        partial += kernels.log_ep_sum(s, scale, tail.power, p, n_hi + 1, new_hi)
        n_hi = new_hi
    value = cmath.exp(log_total + mult * (partial + lead))
    result = ContinuedProductResult(value, terms + n_hi - tail.start + 1, estimate * abs(value))
    if estimate >= tol:
        raise ConvergenceError(f"canonical product tail above {tol:g} at {n_hi} terms", result)
    return result


def _check_pole(s):
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at s = {s.real:g}")


def _g_terms(s, tol):
    # next-order tail after the s^2/(2N) correction
    a = abs(s)
    c = a * a / 4.0 + a**3 / 6.0
    n = max(64, math.ceil(math.sqrt(c / tol)))
    return min(n, 1 << 22)


def gamma_weierstrass_g(s: complex, tol: float = 1e-10) -> EvalResult:
    """g(s) = s^-1 prod (1 + s/n)^-1 e^(s/n), tail-corrected.

    The neglected factors contribute exp(sum_{n>N} [s/n - log(1 + s/n)]),
    replaced by its leading term s**2/(2N).
    """
    s = complex(s)
    _check_pole(s)
    n = _g_terms(s, tol)
    log_sum = kernels.weierstrass_log_sum(s, 1, n)
    tail = s * s / (2.0 * n)
    log_g = log_sum + tail - principal_log(s)
    value = cmath.exp(log_g)
    a = abs(s)
    rel_err = (a * a / 4.0 + a**3 / 6.0) / (n * n)
    return EvalResult(value, rel_err * abs(value), "weierstrass_g", n)


def gamma_weierstrass(s: complex, tol: float = 1e-10) -> EvalResult:
    """Gamma(s) = e^(-gamma s) g(s)."""
    s = complex(s)
    g = gamma_weierstrass_g(s, tol)
    gam = euler_mascheroni(1 << 20)
    # euler_mascheroni error bracket 1/(8 N^2)
    gam_err = 1.0 / (8.0 * (1 << 20) ** 2)
    value = cmath.exp(-gam * s) * g.value
    err = g.err_estimate * abs(value) / max(abs(g.value), 1e-300) + abs(s) * gam_err * abs(value)
    return EvalResult(value, err, "weierstrass", g.work)


def solve_difference_poly(p: Polynomial) -> Polynomial:
    """The Q with Q(0) = 0 and Q(s+1) - Q(s) = P(s).

    Q(s+1) - Q(s) has coefficient sum_{i>j} q_i C(i, j) at s**j, an upper
    triangular system solved from the top degree down.
    """
    d = p.degree
    if d < 0:
        return Polynomial(())
    q = [0j] * (d + 2)
    for j in range(d, -1, -1):
        acc = complex(p.coeffs[j])
        for i in range(j + 2, d + 2):
            acc -= q[i] * math.comb(i, j)
        q[j + 1] = acc / (j + 1)
    return Polynomial(tuple(q))


def difference_residual(q: Polynomial, p: Polynomial) -> Polynomial:
    """Q(s+1) - Q(s) - P(s), coefficientwise."""
    return poly_shift(q) - q - p


def existence_exponent(tol: float = 1e-12, samples: Sequence[complex] = (1.0, 2.0)) -> Polynomial:
    """Fit P (degree <= 1) with g(s+1) / (s g(s)) = exp(P(s)) from samples."""
    vals = []
    for s in samples:
        s = complex(s)
        ratio = gamma_weierstrass_g(s + 1, tol).value / (s * gamma_weierstrass_g(s, tol).value)
        vals.append(principal_log(ratio))
    if len(vals) == 1:
        return Polynomial((vals[0],))
    (s0, s1), (v0, v1) = (complex(samples[0]), complex(samples[1])), vals
    slope = (v1 - v0) / (s1 - s0)
    return Polynomial((v0 - slope * s0, slope))


def gamma_existence(s: complex, tol: float = 1e-10, p: Polynomial | None = None) -> EvalResult:
    """Gamma(s) = exp(-Q(s)) g(s) with Delta Q = P and Q fixed by Gamma(1) = 1.

    ``P`` defaults to the exponent measured by ``existence_exponent``; pass
    ``Polynomial((euler_mascheroni(...),))`` for the closed form.
    """
    if p is None:
        p = existence_exponent(tol)
    q = solve_difference_poly(p)
    shift = principal_log(gamma_weierstrass_g(1.0, tol).value) - q(1.0)
    q = q + Polynomial((shift,))
    g = gamma_weierstrass_g(s, tol)
    value = cmath.exp(-q(complex(s))) * g.value
    return EvalResult(value, g.err_estimate * abs(value) / max(abs(g.value), 1e-300), "existence", g.work)


def estimate_order(f: Callable[[np.ndarray], np.ndarray], radii: Sequence[float],
                   angles: int = 64, log_modulus: bool = False, use_last: int | None = None) -> float:
    """Least-squares slope of log log M(r) against log r.

    M(r) is the max of |f| over ``angles`` equispaced points of |s| = r.
    ``f`` is vectorized over complex arrays; with ``log_modulus=True`` it
    returns log|f| instead (no overflow).  Radii whose maximum overflows,
    or where log M(r) <= 0, are dropped along with every larger radius.
    ``use_last`` restricts the fit to the largest usable radii.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be increasing")
    theta = 2.0 * np.pi * np.arange(angles) / angles
    xs, ys = [], []
    for r in radii:
        pts = r * np.exp(1j * theta)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            try:
                vals = np.asarray(f(pts))
            except OverflowError:
                break
            if log_modulus:
                log_m = float(np.max(np.real(vals)))
            else:
                m = float(np.max(np.abs(vals)))
                if not math.isfinite(m) or m <= 0:
                    break
                log_m = math.log(m)
        if not math.isfinite(log_m):
            break
        if log_m <= 0:
            continue
        xs.append(math.log(r))
        ys.append(math.log(log_m))
    if use_last is not None:
        xs, ys = xs[-use_last:], ys[-use_last:]
    if len(xs) < 3:
        raise EstimationError(f"only {len(xs)} usable radii; need at least 3")
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def recip_gamma_product(s, tol: float = 1e-8) -> complex:
    """1/Gamma(s) = s e^(gamma s) prod E_1(-s/n): entire, exact zeros at poles."""
    s = complex(s)
    cp = canonical_product(gamma_divisor(), 1, s, tol)
    return s * cmath.exp(euler_mascheroni(1 << 20) * s) * cp.value
