"""Hankel contour integrals and the inverse-Laplace formula for 1/Gamma."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, NearIntegerError
from .numerics import EPS, EvalResult, QuadratureSpec, integrate, principal_pow

_LOG40 = math.log(40.0)


@dataclass(frozen=True)
class ContourSpec:
    """Hankel path: legs at Im z = -eps and +eps from Re z = -R to 0,
    joined by the right half of the circle |z| = eps."""

    eps: float = 1.0
    R: float = 40.0
    nodes_per_leg: int = 256
    nodes_arc: int = 64

    def __post_init__(self):
        if not (0 < self.eps <= 1.0 <= self.R):
            raise ValueError("need 0 < eps <= 1 <= R")
        if self.nodes_per_leg < 16 or self.nodes_arc < 16:
            raise ValueError("node counts must be >= 16")

    def doubled(self) -> "ContourSpec":
        return replace(self, nodes_per_leg=2 * self.nodes_per_leg, nodes_arc=2 * self.nodes_arc)


def default_contour(exponent: complex) -> ContourSpec:
    """Contour for the integrand z**exponent * e**z.

    R grows with the algebraic growth Re(exponent) of the integrand; node
    counts follow the oscillation exp(i Im(exponent) log|z|) along the legs.
    """
    exponent = complex(exponent)
    R = 40.0 + max(0.0, exponent.real) * _LOG40
    nodes = max(256, math.ceil(48 * (1 + abs(exponent.imag))))
    nodes = 16 * math.ceil(nodes / 16)
    return ContourSpec(1.0, R, nodes, 64)


def hankel_nodes(c: ContourSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nodes z and weights carrying dz along the Hankel path.

    Traversal: lower leg from -R - i eps to -i eps, arc through +eps, upper
    leg from +i eps back to -R + i eps (counterclockwise about the cut).
    Legs are parametrized x = -R u**2, which clusters nodes near the origin.
    """
    panels = max(1, c.nodes_per_leg // 16)
    x16, w16 = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    u = (edges[:-1, None] + half * (x16 + 1.0)).ravel()
    wu = (half * w16).ravel()
    x = -c.R * u * u
    dx = 2.0 * c.R * u * wu  # |dx/du| du

    # lower leg runs toward the origin (dz = +dx), upper leg away from it
    z_low = (x - 1j * c.eps)[::-1]
    w_low = dx[::-1].astype(complex)
    z_up = x + 1j * c.eps
    w_up = -dx.astype(complex)

    xa, wa = np.polynomial.legendre.leggauss(c.nodes_arc)
    theta = 0.5 * math.pi * xa
    z_arc = c.eps * np.exp(1j * theta)
    w_arc = 1j * z_arc * (0.5 * math.pi) * wa

    z = np.concatenate([z_low, z_arc, z_up])
    w = np.concatenate([w_low, w_arc, w_up])
    return z, w


def _truncation_bound(exponent, R):
    # |z^a e^z| <= e^{pi |Im a|} |z|^{Re a} e^{Re z} beyond Re z = -R
    a = complex(exponent)
    return 2.0 * math.exp(math.pi * abs(a.imag) - R) * R ** a.real / max(1.0 - a.real / R, 0.5)


def _contour_integral(exponent, c, label, max_doublings=3):
    z, w = hankel_nodes(c)
    prev, mass = kernels.contour_sum(z, w, exponent)
    work = z.size
    diff = math.inf
    for _ in range(max_doublings):
        c = c.doubled()
        z, w = hankel_nodes(c)
        cur, mass = kernels.contour_sum(z, w, exponent)
        work += z.size
        diff = abs(cur - prev)
        if diff <= max(1e-14 * abs(cur), 256.0 * EPS * mass):
            return cur, diff + _truncation_bound(exponent, c.R), work
        prev = cur
    err = diff + _truncation_bound(exponent, c.R)
    raise ConvergenceError(f"{label}: no convergence after {max_doublings} node doublings",
                           EvalResult(prev, err, label, work))


def recip_gamma_hankel(s: complex, c: ContourSpec | None = None) -> EvalResult:
    """1/Gamma(s) = (1/(2 pi i)) int z^-s e^z dz over the Hankel path."""
    s = complex(s)
    c = c or default_contour(-s)
    total, err, work = _contour_integral(-s, c, "recip-hankel")
    scale = 1.0 / (2j * math.pi)
    return EvalResult(total * scale, err * abs(scale), "recip-hankel", work)


def gamma_hankel(s: complex, c: ContourSpec | None = None) -> EvalResult:
    """Gamma(s) = (1/(2 i sin(pi s))) int z^(s-1) e^z dz; not for integer s."""
    s = complex(s)
    sine = cmath.sin(math.pi * s)
    if abs(sine) < 1e-8:
        raise NearIntegerError(f"|sin(pi s)| < 1e-8 at s = {s}; use recip-hankel or the recurrence")
    c = c or default_contour(s - 1)
    total, err, work = _contour_integral(s - 1, c, "hankel")
    denom = 2j * sine
    return EvalResult(total / denom, err / abs(denom), "hankel", work)


def laplace_tail_bound(s: complex, x: float, Y: float) -> float:
    """Bound on the neglected |y| > Y part of the Laplace integral (times 1/2 pi).

    One integration by parts against e^{iy}: each side is at most
    e^{x + pi |Im s| / 2} Y^{-Re s} (1 + |s| / Re s).
    """
    s = complex(s)
    side = math.exp(x + 0.5 * math.pi * abs(s.imag)) * Y ** (-s.real) * (1.0 + abs(s) / s.real)
    return 2.0 * side / (2.0 * math.pi)


def laplace_end_series(z: complex, s: complex, tol: float = 1e-17, max_terms: int = 60) -> tuple[complex, float]:
    """F(z) = e^z z^-s sum_k (s)_k z^-k, an antiderivative of e^z z^-s.

    The series is asymptotic in 1/z; it is summed until a term drops below
    ``tol`` relative to the first or starts to grow.  Returns F and the
    size of the last term kept, which serves as the error estimate.
    """
    z, s = complex(z), complex(s)
    lead = cmath.exp(z - s * cmath.log(z))
    total, term = 0j, 1 + 0j
    last = abs(term)
    for k in range(max_terms):
        total += term
        nxt = term * (s + k) / z
        if abs(nxt) >= last or abs(nxt) < tol:
            last = abs(nxt)
            break
        term, last = nxt, abs(nxt)
    return lead * total, abs(lead) * last


def recip_gamma_laplace(s: complex, x: float = 1.0, Y: float | None = None,
                        spec: QuadratureSpec | None = None, tol: float = 1e-10,
                        Y_cap: float = 1e6, end_correction: bool = True) -> EvalResult:
    """1/Gamma(s) = (1/2 pi) int e^(x+iy) (x+iy)^-s dy over the whole line.

    Requires Re s > 1 (absolute convergence).  The range |y| <= Y goes to
    adaptive Gauss-Legendre.  With ``end_correction`` the two tails are
    added in closed form from the asymptotic antiderivative
    (``laplace_end_series``) and Y only has to make that series converge;
    without it the tails are dropped and Y must make ``laplace_tail_bound``
    small, which needs Y ~ tol**(-1/Re s).
    """
    s = complex(s)
    if s.real <= 1.0:
        raise DomainError("Laplace route needs Re s > 1; reduce the argument first (--reduce)")
    if x <= 0:
        raise DomainError("abscissa x must be positive")
    scale = 2.0 * math.pi
    if end_correction:
        fixed = Y is not None
        Y = Y if fixed else max(32.0, 4.0 * abs(s))
        while True:
            up, e_up = laplace_end_series(complex(x, Y), s)
            down, e_down = laplace_end_series(complex(x, -Y), s)
            # stop once both series settle to rounding level
            settled = e_up <= 1e-16 * abs(up) and e_down <= 1e-16 * abs(down)
            if fixed or settled or 2.0 * Y > Y_cap:
                break
            Y *= 2.0
        # int_Y^inf dy = i F(x + iY); int_-inf^-Y dy = -i F(x - iY)
        tails = 1j * up - 1j * down
        tail_err = (e_up + e_down) / scale
    else:
        if Y is None:
            Y = 16.0
            while laplace_tail_bound(s, x, Y) > tol and Y < Y_cap:
                Y *= 2.0
        tails = 0j
        tail_err = laplace_tail_bound(s, x, Y)
    if tail_err > tol * max(1.0, abs(tails) / scale):
        raise ConvergenceError(f"Laplace tail error {tail_err:.3g} above {tol:g} at Y = {Y:g}",
                               EvalResult(0j, tail_err, "laplace", 0))
    spec = spec or QuadratureSpec(abs_tol=min(tol, 1e-12) * scale, level=30)

    def integrand(y):
        z = x + 1j * y
        return np.exp(z - s * np.log(z))

    res = integrate(integrand, -Y, Y, spec)
    value = (res.value + tails) / scale
    return EvalResult(value, res.err_estimate / scale + tail_err, "laplace", res.work)
