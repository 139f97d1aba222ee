"""Shared numeric conventions: branches, polynomials, quadrature, reduction.

Complex scalars are plain Python ``complex`` values.  The principal branch
of the logarithm has arg in (-pi, pi]; a point on the negative real axis
maps to +i*pi, whatever the sign of its zero imaginary part.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError, NumericOverflowError

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EvalResult:
    """A value with a heuristic absolute error and the work it took."""

    value: complex
    err_estimate: float
    method: str
    work: int = 0

    def __post_init__(self):
        if not self.err_estimate >= 0.0:
            raise ValueError("err_estimate must be non-negative")
        if self.work < 0:
            raise ValueError("work must be non-negative")
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise NumericOverflowError(f"{self.method}: non-finite value {v}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class QuadratureSpec:
    kind: str = "gauss_legendre_composite"
    level: int = 24
    abs_tol: float = 1e-14

    def __post_init__(self):
        if self.kind not in ("gauss_legendre_composite", "tanh_sinh"):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")


# ---------------------------------------------------------------------------
# branches
# ---------------------------------------------------------------------------


def principal_log(z: complex) -> complex:
    """log|z| + i arg z with arg z in (-pi, pi]."""
    z = complex(z)
    if z == 0:
        raise DomainError("log of zero")
    if z.imag == 0.0 and z.real < 0.0:
        return complex(math.log(-z.real), math.pi)
    return cmath.log(z)


def principal_pow(z: complex, s: complex) -> complex:
    """exp(s * principal_log(z)); 0**s is 0 for Re s > 0."""
    z = complex(z)
    s = complex(s)
    if z == 0:
        if s.real > 0:
            return 0j
        raise DomainError("0 raised to a power with Re s <= 0")
    if s == 0:
        return 1 + 0j
    try:
        return cmath.exp(s * principal_log(z))
    except OverflowError as exc:
        raise NumericOverflowError(f"{z}**{s} overflows") from exc


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial; ``coeffs[k]`` multiplies s**k.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    coeffs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        c = [complex(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, s: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def _padded(self, n):
        return list(self.coeffs) + [0j] * (n - len(self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(a + b for a, b in zip(self._padded(n), other._padded(n))))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(a - b for a, b in zip(self._padded(n), other._padded(n))))

    def __mul__(self, c: complex) -> "Polynomial":
        return Polynomial(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


def poly_shift(q: Polynomial) -> Polynomial:
    """Coefficients of s -> q(s + 1), by binomial expansion."""
    n = len(q.coeffs)
    out = [0j] * n
    for i, c in enumerate(q.coeffs):
        for j in range(i + 1):
            out[j] += c * math.comb(i, j)
    return Polynomial(tuple(out))


# ---------------------------------------------------------------------------
# argument reduction
# ---------------------------------------------------------------------------


def reduce_to_right(s: complex, threshold: float) -> tuple[complex, int]:
    """Smallest n >= 0 with Re(s + n) >= threshold; returns (s + n, n).

    The caller rebuilds Gamma(s) = Gamma(s + n) / (s (s+1) ... (s+n-1)).
    """
    s = complex(s)
    n = max(0, math.ceil(threshold - s.real))
    return s + n, n


def rising_product(s: complex, n: int) -> complex:
    """s (s+1) ... (s+n-1); empty product is 1."""
    acc = 1 + 0j
    for k in range(n):
        acc *= s + k
    return acc


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def gauss_legendre_panels(edges: np.ndarray, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights over consecutive panels."""
    if order == 16:
        x, w = _GL_X, _GL_W
    else:
        x, w = np.polynomial.legendre.leggauss(order)
    lo = edges[:-1, None]
    half = 0.5 * (edges[1:, None] - lo)
    nodes = lo + half * (x + 1.0)
    weights = half * w
    return nodes.ravel(), weights.ravel()


def _as_mapped(f, a, b):
    """Map [a, inf) onto [0, 1) with t = a + u / (1 - u)."""
    if math.isinf(b):

        def g(u):
            one_minus = 1.0 - u
            return f(a + u / one_minus) / (one_minus * one_minus)

        return g, 0.0, 1.0
    return f, a, b


def _gl_adaptive(f, a, b, spec, initial_panels=8):
    x, w = _GL_X, _GL_W
    width_total = b - a

    def panel_values(lo, hi):
        half = 0.5 * (hi - lo)
        nodes = lo[:, None] + half[:, None] * (x + 1.0)
        vals = np.asarray(f(nodes.ravel()), dtype=complex).reshape(nodes.shape)
        terms = vals * w * half[:, None]
        return terms.sum(axis=1), np.abs(terms).sum(axis=1)

    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    coarse, _ = panel_values(lo, hi)
    work = lo.size * 16
    value = 0j
    err = 0.0
    for _level in range(spec.level):
        mid = 0.5 * (lo + hi)
        left, lmass = panel_values(lo, mid)
        right, rmass = panel_values(mid, hi)
        work += 32 * lo.size
        fine = left + right
        diff = np.abs(fine - coarse)
        share = spec.abs_tol * (hi - lo) / width_total
        floor = 64.0 * EPS * (lmass + rmass)
        ok = diff <= np.maximum(share, floor)
        value += complex(np.sum(fine[ok]))
        err += float(np.sum(diff[ok]))
        if ok.all():
            return EvalResult(value, err, "gauss_legendre_composite", work)
        keep = ~ok
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
        order = np.argsort(lo, kind="stable")
        lo, hi, coarse = lo[order], hi[order], coarse[order]
    best = EvalResult(value + complex(np.sum(coarse)), err + float(np.sum(diff[~ok])),
                      "gauss_legendre_composite", work)
    raise ConvergenceError(f"adaptive Gauss-Legendre did not reach {spec.abs_tol:g} in {spec.level} levels", best)


def _tanh_sinh_nodes(a, b, tau):
    half = 0.5 * (b - a)
    u = 0.5 * math.pi * np.sinh(tau)
    e = np.exp(-2.0 * np.abs(u))
    # distance to the nearer endpoint, free of cancellation
    dist = 2.0 * half * e / (1.0 + e)
    t = np.where(u <= 0, a + dist, b - dist)
    weight = half * 0.5 * math.pi * np.cosh(tau) * 4.0 * e / (1.0 + e) ** 2
    inside = (t > a) & (t < b) & (weight > 0)
    return t[inside], weight[inside]


def _tanh_sinh(f, a, b, spec, tmax=5.0):
    h = 0.5
    kmax = int(tmax / h)
    t, wt = _tanh_sinh_nodes(a, b, h * np.arange(-kmax, kmax + 1))
    terms = np.asarray(f(t), dtype=complex) * wt
    total = complex(np.sum(terms))
    mass = float(np.sum(np.abs(terms)))
    work = t.size
    estimate = h * total
    err = math.inf
    for level in range(1, spec.level + 1):
        h *= 0.5
        # only the odd multiples of the new step are new abscissae
        kmax = int((tmax / h - 1) / 2)
        t, wt = _tanh_sinh_nodes(a, b, h * (2 * np.arange(-kmax - 1, kmax + 1) + 1))
        terms = np.asarray(f(t), dtype=complex) * wt
        total += complex(np.sum(terms))
        mass += float(np.sum(np.abs(terms)))
        work += t.size
        new = h * total
        err = abs(new - estimate)
        estimate = new
        if level >= 3 and err <= max(spec.abs_tol, 64.0 * EPS * h * mass):
            return EvalResult(estimate, err, "tanh_sinh", work)
    raise ConvergenceError(
        f"tanh-sinh did not reach {spec.abs_tol:g} in {spec.level} levels",
        EvalResult(estimate, err, "tanh_sinh", work),
    )


def integrate(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, spec: QuadratureSpec | None = None) -> EvalResult:
    """Integrate a vectorized integrand over [a, b] (b may be +inf).

    ``f`` receives a float64 array of abscissae and must return an array of
    the same shape.  With ``kind="tanh_sinh"`` the nodes crowd both
    endpoints; an endpoint singularity is resolved to full relative
    precision only at ``a`` (abscissae near ``b`` are formed as ``b - d``).
    """
    spec = spec or QuadratureSpec()
    if not (math.isfinite(a) and b > a):
        if b == a:
            return EvalResult(0j, 0.0, spec.kind, 0)
        raise DomainError(f"invalid interval [{a}, {b}]")
    g, lo, hi = _as_mapped(f, float(a), float(b))
    if spec.kind == "tanh_sinh":
        return _tanh_sinh(g, lo, hi, spec)
    return _gl_adaptive(g, lo, hi, spec)
