"""Hot inner loops, compiled with numba when available.

Every kernel has two implementations with identical signatures: a
``numba.njit`` version and a pure-numpy version.  The public names at the
bottom of this module are bound to one of them at import time.

Backend selection:

* ``GAMMAFORGE_BACKEND=numpy`` forces the numpy path.
* ``GAMMAFORGE_BACKEND=numba`` (default) uses numba if it imports, numpy
  otherwise.

Both paths are kept numerically interchangeable; ``tests/test_kernels.py``
checks them against each other and ``benchmarks/bench_kernels.py`` times
them.
"""

from __future__ import annotations

import cmath
import math
import os

import numpy as np

_CHUNK = 1 << 16


def _want_numba():
    choice = os.environ.get("GAMMAFORGE_BACKEND", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"GAMMAFORGE_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    return choice == "numba"


try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _want_numba()
BACKEND = "numba" if USE_NUMBA else "numpy"


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


@_njit
def _clog1p_nb(a, b):
    # log(1 + a + ib); real part via log1p keeps |w| << 1 accurate
    return complex(0.5 * math.log1p(2.0 * a + (a * a + b * b)), math.atan2(b, 1.0 + a))


@_njit
def _harmonic_sum_nb(n):
    # Neumaier summation, smallest terms first
    total = 0.0
    comp = 0.0
    for k in range(n, 0, -1):
        term = 1.0 / k
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
    return total + comp


@_njit
def _log1p_ratio_sum_nb(s, k0, k1):
    # sum_{k=k0}^{k1} log(1 + s/k)
    x = s.real
    y = s.imag
    acc_re = 0.0
    acc_im = 0.0
    for k in range(k0, k1 + 1):
        a = x / k
        b = y / k
        acc_re += 0.5 * math.log1p(2.0 * a + (a * a + b * b))
        acc_im += math.atan2(b, 1.0 + a)
    return complex(acc_re, acc_im)


@_njit
def _weierstrass_log_sum_nb(s, n0, n1):
    # sum_{n=n0}^{n1} [s/n - log(1 + s/n)]
    x = s.real
    y = s.imag
    acc_re = 0.0
    acc_im = 0.0
    for n in range(n0, n1 + 1):
        a = x / n
        b = y / n
        acc_re += a - 0.5 * math.log1p(2.0 * a + (a * a + b * b))
        acc_im += b - math.atan2(b, 1.0 + a)
    return complex(acc_re, acc_im)


@_njit
def _shifted_log_sum_nb(s, k0, k1):
    # sum_{k=k0}^{k1} Log(s + k), principal branch per term
    acc = 0j
    for k in range(k0, k1 + 1):
        acc += cmath.log(s + k)
    return acc


@_njit
def _log_ep_sum_nb(s, scale, power, p, n0, n1):
    # sum_{n=n0}^{n1} log E_p(s / (scale * n**power))
    acc = 0j
    for n in range(n0, n1 + 1):
        w = s / (scale * float(n) ** power)
        term = _clog1p_nb(-w.real, -w.imag)
        wj = 1.0 + 0j
        for j in range(1, p + 1):
            wj = wj * w
            term += wj / j
        acc += term
    return acc


@_njit
def _hurwitz_partial_nb(t, s, k0, k1):
    # sum_{k=k0}^{k1} exp(-t Log(s + k))
    acc = 0j
    for k in range(k0, k1 + 1):
        acc += cmath.exp(-t * cmath.log(s + k))
    return acc


@_njit
def _sawtooth_sum_nb(p, s, k0, k1, x, w):
    # sum_{k=k0}^{k1} sum_j w_j (x_j - 1/2) (x_j + k + s)^(-p)
    acc = 0j
    for k in range(k0, k1 + 1):
        inner = 0j
        for j in range(x.shape[0]):
            inner += w[j] * (x[j] - 0.5) * cmath.exp(-p * cmath.log(x[j] + k + s))
        acc += inner
    return acc


@_njit
def _contour_sum_nb(z, w, a):
    # sum_j w_j exp(a Log z_j + z_j), plus the l1 mass of the terms
    acc = 0j
    mass = 0.0
    for j in range(z.shape[0]):
        term = w[j] * cmath.exp(a * cmath.log(z[j]) + z[j])
        acc += term
        mass += abs(term)
    return acc, mass


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _chunks(k0, k1):
    start = k0
    while start <= k1:
        stop = min(k1, start + _CHUNK - 1)
        yield np.arange(start, stop + 1, dtype=np.float64)
        start = stop + 1


def _clog1p_np(a, b):
    return 0.5 * np.log1p(2.0 * a + (a * a + b * b)) + 1j * np.arctan2(b, 1.0 + a)


def _harmonic_sum_np(n):
    parts = []
    for k in _chunks(1, n):
        parts.append(np.sum(1.0 / k[::-1]))
    return math.fsum(parts)


def _log1p_ratio_sum_np(s, k0, k1):
    acc = 0j
    for k in _chunks(k0, k1):
        acc += np.sum(_clog1p_np(s.real / k, s.imag / k))
    return complex(acc)


def _weierstrass_log_sum_np(s, n0, n1):
    acc = 0j
    for n in _chunks(n0, n1):
        a = s.real / n
        b = s.imag / n
        acc += np.sum((a + 1j * b) - _clog1p_np(a, b))
    return complex(acc)


def _shifted_log_sum_np(s, k0, k1):
    acc = 0j
    for k in _chunks(k0, k1):
        acc += np.sum(np.log(s + k))
    return complex(acc)


def _log_ep_sum_np(s, scale, power, p, n0, n1):
    acc = 0j
    for n in _chunks(n0, n1):
        w = s / (scale * n**power)
        term = _clog1p_np(-w.real, -w.imag)
        wj = np.ones_like(w)
        for j in range(1, p + 1):
            wj = wj * w
            term = term + wj / j
        acc += np.sum(term)
    return complex(acc)


def _hurwitz_partial_np(t, s, k0, k1):
    acc = 0j
    for k in _chunks(k0, k1):
        acc += np.sum(np.exp(-t * np.log(s + k)))
    return complex(acc)


def _sawtooth_sum_np(p, s, k0, k1, x, w):
    acc = 0j
    xw = w * (x - 0.5)
    step = max(1, _CHUNK // x.shape[0])
    k = k0
    while k <= k1:
        ks = np.arange(k, min(k1, k + step - 1) + 1, dtype=np.float64)
        z = x[None, :] + ks[:, None] + s
        acc += np.sum(np.exp(-p * np.log(z)) @ xw)
        k += step
    return complex(acc)


def _contour_sum_np(z, w, a):
    terms = w * np.exp(a * np.log(z) + z)
    return complex(np.sum(terms)), float(np.sum(np.abs(terms)))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

IMPLEMENTATIONS = {
    "harmonic_sum": (_harmonic_sum_nb, _harmonic_sum_np),
    "log1p_ratio_sum": (_log1p_ratio_sum_nb, _log1p_ratio_sum_np),
    "weierstrass_log_sum": (_weierstrass_log_sum_nb, _weierstrass_log_sum_np),
    "shifted_log_sum": (_shifted_log_sum_nb, _shifted_log_sum_np),
    "log_ep_sum": (_log_ep_sum_nb, _log_ep_sum_np),
    "hurwitz_partial": (_hurwitz_partial_nb, _hurwitz_partial_np),
    "sawtooth_sum": (_sawtooth_sum_nb, _sawtooth_sum_np),
    "contour_sum": (_contour_sum_nb, _contour_sum_np),
}


def _pick(name):
    nb, np_ = IMPLEMENTATIONS[name]
    return nb if USE_NUMBA else np_


def harmonic_sum(n: int) -> float:
    """Compensated sum of 1/k for k = 1..n."""
    return float(_pick("harmonic_sum")(int(n)))


def log1p_ratio_sum(s: complex, k0: int, k1: int) -> complex:
    """Sum of log(1 + s/k) for k = k0..k1 (empty range gives 0)."""
    if k1 < k0:
        return 0j
    return complex(_pick("log1p_ratio_sum")(complex(s), int(k0), int(k1)))


def weierstrass_log_sum(s: complex, n0: int, n1: int) -> complex:
    """Sum of s/n - log(1 + s/n) for n = n0..n1."""
    if n1 < n0:
        return 0j
    return complex(_pick("weierstrass_log_sum")(complex(s), int(n0), int(n1)))


def shifted_log_sum(s: complex, k0: int, k1: int) -> complex:
    """Sum of principal Log(s + k) for k = k0..k1."""
    if k1 < k0:
        return 0j
    return complex(_pick("shifted_log_sum")(complex(s), int(k0), int(k1)))


def log_ep_sum(s: complex, scale: complex, power: float, p: int, n0: int, n1: int) -> complex:
    """Sum of log E_p(s / (scale * n**power)) for n = n0..n1."""
    if n1 < n0:
        return 0j
    fn = _pick("log_ep_sum")
    return complex(fn(complex(s), complex(scale), float(power), int(p), int(n0), int(n1)))


def hurwitz_partial(t: complex, s: complex, k0: int, k1: int) -> complex:
    """Sum of (s + k)**(-t) for k = k0..k1, principal powers."""
    if k1 < k0:
        return 0j
    return complex(_pick("hurwitz_partial")(complex(t), complex(s), int(k0), int(k1)))


def sawtooth_sum(p: complex, s: complex, k0: int, k1: int, x: np.ndarray, w: np.ndarray) -> complex:
    """Quadrature of (u - [u] - 1/2) (u + s)**(-p) over unit intervals k0..k1.

    ``x``/``w`` is a quadrature rule on [0, 1] applied to every interval.
    """
    if k1 < k0:
        return 0j
    fn = _pick("sawtooth_sum")
    return complex(fn(complex(p), complex(s), int(k0), int(k1), x, w))


def contour_sum(z: np.ndarray, w: np.ndarray, a: complex) -> tuple[complex, float]:
    """Return (sum of w z**a e**z, sum of |w z**a e**z|) over contour nodes."""
    total, mass = _pick("contour_sum")(z, w, complex(a))
    return complex(total), float(mass)
