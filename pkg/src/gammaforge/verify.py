"""Verification suites: identities of Gamma checked pointwise over grids.

A route is named by its registry identifier, or given directly as a
callable s -> Gamma(s) (the falsifier family is passed that way).  Route
errors at a point are recorded as failures with an infinite residual, so a
suite never aborts half way.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import __version__
from .errors import GammaForgeError
from .numerics import principal_log
from .routes import METHODS, evaluate

Method = Union[str, Callable[[complex], complex]]

SUITES = ("functional", "reflection", "duplication", "residues", "conjugate", "strip",
          "convexity", "falsifier")


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    re_steps: int
    im_min: float
    im_max: float
    im_steps: int
    pole_exclusion_radius: float = 0.25

    def __post_init__(self):
        if self.re_steps < 1 or self.im_steps < 1:
            raise ValueError("grid steps must be >= 1")
        if not self.pole_exclusion_radius > 0:
            raise ValueError("pole_exclusion_radius must be positive")
        if self.re_max < self.re_min or self.im_max < self.im_min:
            raise ValueError("grid bounds are reversed")

    def points(self, avoid_integers: bool = False) -> list[complex]:
        """Row-major grid points, minus those strictly closer than the
        exclusion radius to a pole (or to any integer)."""
        r = self.pole_exclusion_radius
        xs = np.linspace(self.re_min, self.re_max, self.re_steps)
        ys = np.linspace(self.im_min, self.im_max, self.im_steps)
        out = []
        for x in xs:
            for y in ys:
                s = complex(float(x), float(y))
                n = round(s.real)
                if not avoid_integers:
                    n = min(n, 0)
                if abs(s - n) < r:
                    continue
                out.append(s)
        return out

    def conjugate_closed(self) -> bool:
        return math.isclose(self.im_min, -self.im_max, abs_tol=1e-12)


def standard_grid() -> GridSpec:
    """Re in [0.25, 4] (16 steps) x Im in [-8, 8] (33 steps), radius 0.25."""
    return GridSpec(0.25, 4.0, 16, -8.0, 8.0, 33, 0.25)


@dataclass
class VerificationReport:
    suite: str
    method: str
    grid: dict | None
    points_tested: int
    max_residual: float
    worst_point: complex | None
    failures: list = field(default_factory=list)  # (point, residual)
    passed: bool = True
    tol: float = 0.0
    notes: list = field(default_factory=list)  # route errors and remarks, not serialized
    rows: list = field(default_factory=list)  # CompareRow entries from cross_compare

    def to_dict(self) -> dict:
        def num(v):
            return v if math.isfinite(v) else None

        worst = None
        if self.worst_point is not None:
            worst = {"re": self.worst_point.real, "im": self.worst_point.imag}
        return {
            "suite": self.suite,
            "method": self.method,
            "grid": self.grid,
            "points_tested": self.points_tested,
            "max_residual": num(self.max_residual),
            "worst_point": worst,
            "failures": [{"re": p.real, "im": p.imag, "residual": num(r)} for p, r in self.failures],
            "passed": self.passed,
            "tool_version": __version__,
        }

    def to_json(self, **kw) -> str:
        import json

        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def thread_count() -> int:
    """GAMMAFORGE_THREADS, with 0 or unset meaning one thread per core."""
    raw = os.environ.get("GAMMAFORGE_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError("GAMMAFORGE_THREADS must be >= 0")
    return n or min(32, os.cpu_count() or 1)


def parallel_map(fn, items: Sequence) -> list:
    """fn over items on a thread pool; results keep the input order."""
    items = list(items)
    workers = min(thread_count(), max(1, len(items)))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def gamma_callable(m: Method, reduce: bool = True, tol: float | None = None) -> Callable[[complex], complex]:
    if callable(m):
        return m
    if m not in METHODS:
        raise KeyError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if tol is None:
        return lambda s: evaluate(m, s, reduce=reduce).value
    return lambda s: evaluate(m, s, tol=tol, reduce=reduce).value


def method_name(m: Method) -> str:
    return m if isinstance(m, str) else getattr(m, "__name__", "custom")


def _safe(residual_fn):
    def run(s):
        try:
            r = float(residual_fn(s))
            return r if not math.isnan(r) else math.inf, None
        except (GammaForgeError, ArithmeticError, ValueError) as exc:
            return math.inf, f"{s}: {type(exc).__name__}: {exc}"

    return run


def _report(suite, method, grid, points, residual_fn, tol) -> VerificationReport:
    results = parallel_map(_safe(residual_fn), points)
    rep = VerificationReport(suite, method, asdict(grid) if isinstance(grid, GridSpec) else grid,
                             len(points), 0.0, None, tol=tol)
    for s, (r, note) in zip(points, results):
        if note:
            rep.notes.append(note)
        if rep.worst_point is None or r > rep.max_residual:
            rep.max_residual, rep.worst_point = r, s
        if not r <= tol:
            rep.failures.append((s, r))
    rep.passed = not rep.failures
    return rep


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------


def check_functional_eq(m: Method, g: GridSpec | None = None, tol: float = 1e-8,
                        reduce: bool = True) -> VerificationReport:
    """|Gamma(s+1) / (s Gamma(s)) - 1| per grid point."""
    g = g or standard_grid()
    gam = gamma_callable(m, reduce)
    return _report("functional", method_name(m), g, g.points(),
                   lambda s: abs(gam(s + 1) / (s * gam(s)) - 1.0), tol)


def check_reflection(m: Method, g: GridSpec | None = None, tol: float = 1e-9,
                     reduce: bool = True) -> VerificationReport:
    """|Gamma(s) Gamma(1-s) sin(pi s) / pi - 1|, integers excluded."""
    g = g or standard_grid()
    gam = gamma_callable(m, reduce)
    return _report("reflection", method_name(m), g, g.points(avoid_integers=True),
                   lambda s: abs(gam(s) * gam(1 - s) * cmath.sin(math.pi * s) / math.pi - 1.0), tol)


def check_imaginary_axis(m: Method, ys: Iterable[float] = (0.5, 1.0, 2.0), tol: float = 1e-8,
                         reduce: bool = True) -> VerificationReport:
    """|Gamma(iy)|^2 against pi / (y sinh(pi y)), relative."""
    gam = gamma_callable(m, reduce)
    ys = [float(y) for y in ys]

    def residual(s):
        y = s.imag
        return abs(abs(gam(s)) ** 2 * y * math.sinh(math.pi * y) / math.pi - 1.0)

    return _report("imaginary-axis", method_name(m), {"im": ys}, [complex(0, y) for y in ys], residual, tol)


def check_duplication(m: Method, g: GridSpec | None = None, tol: float = 1e-8,
                      reduce: bool = True) -> VerificationReport:
    """|2^(2s-1) Gamma(s) Gamma(s+1/2) / (sqrt(pi) Gamma(2s)) - 1|."""
    g = g or GridSpec(0.3, 2.0, 18, -4.0, 4.0, 17, 0.25)
    gam = gamma_callable(m, reduce)
    sqrt_pi = math.sqrt(math.pi)

    def residual(s):
        lhs = cmath.exp((2 * s - 1) * math.log(2.0)) * gam(s) * gam(s + 0.5)
        return abs(lhs / (sqrt_pi * gam(2 * s)) - 1.0)

    return _report("duplication", method_name(m), g, g.points(), residual, tol)


def residue_removable(gam: Callable[[complex], complex], n: int) -> complex:
    """Res_{s=-n} Gamma as Gamma(s+n+1) / prod_{k<n} (s+k) at s = -n."""
    denom = 1.0
    for k in range(n):
        denom *= k - n
    return gam(1.0 + 0j) / denom


def check_residues(m: Method, n_max: int = 12, tol: float = 1e-8, reduce: bool = True) -> VerificationReport:
    """Residues at 0, -1, ..., -n_max against (-1)^n / n!, relative."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    gam = gamma_callable(m, reduce)
    points = [complex(-n, 0) for n in range(n_max + 1)]

    def residual(s):
        n = int(-s.real)
        exact = (-1) ** n / math.factorial(n)
        return abs(residue_removable(gam, n) / exact - 1.0)

    return _report("residues", method_name(m), {"n_max": n_max}, points, residual, tol)


def check_conjugate_symmetry(m: Method, g: GridSpec | None = None, tol: float = 1e-10,
                             reduce: bool = True) -> VerificationReport:
    """|Gamma(conj s) - conj Gamma(s)| / |Gamma(s)|, plus |Im psi(1)| at s = 1.

    The psi(1) entry comes from ``imag_digamma_at_1``; a real-analytic
    function has Im psi(1) = 0.
    """
    g = g or standard_grid()
    gam = gamma_callable(m, reduce)

    def residual(s):
        if s == 1 and s.imag == 0:
            return abs(imag_digamma_at_1(gam))
        v = gam(s)
        return abs(gam(s.conjugate()) - v.conjugate()) / abs(v)

    points = g.points()
    if 1 + 0j not in points:
        points.append(1 + 0j)
    return _report("conjugate", method_name(m), g, points, residual, tol)


def imag_digamma_at_1(gam: Callable[[complex], complex], h: float = 1e-3) -> float:
    """Im of (log f(1+h) - log f(1-h)) / 2h, a central difference for f'(1)/f(1).

    The imaginary part of a logarithmic derivative is the rate of change of
    arg f, which the central difference measures without branch trouble
    when arg f changes by less than pi over [1-h, 1+h].
    """
    d = principal_log(gam(1.0 + h)) - principal_log(gam(1.0 - h))
    return d.imag / (2.0 * h)


def check_strip_bound(m: Method, a: float = 1.0, b: float = 2.0, y_max: float = 20.0,
                      tol: float = 0.0, x_steps: int = 11, y_steps: int = 81,
                      reduce: bool = True) -> VerificationReport:
    """|Gamma(x+iy)| <= Gamma(x) (1 + tol) at every sampled point of the strip.

    The residual is max(0, |Gamma(x+iy)| / Gamma(x) - 1), so the report passes
    exactly when no sample violates the bound.
    """
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    gam = gamma_callable(m, reduce)
    grid = GridSpec(a, b, x_steps, -y_max, y_max, y_steps, 0.25)
    xs = sorted({s.real for s in grid.points()})
    real_vals = dict(zip(xs, parallel_map(lambda x: abs(gam(complex(x, 0.0))), xs)))

    def residual(s):
        return max(0.0, abs(gam(s)) / real_vals[s.real] - 1.0)

    return _report("strip", method_name(m), grid, grid.points(), residual, tol)


def check_log_convexity(m: Method, a: float = 1.0, b: float = 2.0, steps: int = 100,
                        tol: float = 1e-10, reduce: bool = True) -> VerificationReport:
    """Second differences of log Gamma on [a, b] must be >= -tol.

    The residual at an interior node is max(0, -second difference).
    """
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if steps < 3:
        raise ValueError("steps must be >= 3")
    gam = gamma_callable(m, reduce)
    xs = np.linspace(a, b, steps)
    logs = parallel_map(lambda x: math.log(abs(gam(complex(float(x), 0.0)))), xs)
    d2 = {complex(float(xs[i]), 0.0): logs[i - 1] - 2.0 * logs[i] + logs[i + 1] for i in range(1, steps - 1)}
    return _report("convexity", method_name(m), {"a": a, "b": b, "steps": steps}, list(d2),
                   lambda s: max(0.0, -d2[s]), tol)


# ---------------------------------------------------------------------------
# falsifier
# ---------------------------------------------------------------------------


def falsifier(k: int, m: Method, s: complex, reduce: bool = True) -> complex:
    """e^(2 pi i k s) Gamma(s): satisfies f(s+1) = s f(s) and f(1) = 1 for
    every integer k, but is not real on the real axis unless k = 0."""
    gam = gamma_callable(m, reduce)
    s = complex(s)
    return cmath.exp(2j * math.pi * k * s) * gam(s)


def falsifier_callable(k: int, m: Method = "lerch", reduce: bool = True) -> Callable[[complex], complex]:
    gam = gamma_callable(m, reduce)

    def f(s):
        s = complex(s)
        return cmath.exp(2j * math.pi * k * s) * gam(s)

    f.__name__ = f"falsifier(k={k}, {method_name(m)})"
    return f


def check_falsifier(k: int, m: Method = "lerch", g: GridSpec | None = None, tol: float = 1e-6,
                    reduce: bool = True) -> VerificationReport:
    """Executable uniqueness argument for the family f_k = e^(2 pi i k s) Gamma.

    The suite passes when the family behaves as the characterization says:
    f_k satisfies the functional equation and f_k(1) = 1, while the
    conjugate-symmetry check detects it through Im psi_f(1) = 2 pi k.  Every
    residual below must be within ``tol``:

    * functional-equation residuals of f_k on the grid,
    * |f_k(1) - 1| at s = 1,
    * |Im psi_f(1) - 2 pi k| at s = 1 + 0i (reported at that point).

    For k != 0, detection additionally requires the conjugate suite run on
    f_k to fail; if it passes, a failure is recorded with infinite residual.
    """
    g = g or GridSpec(0.25, 4.0, 16, -2.0, 2.0, 9, 0.25)
    f = falsifier_callable(k, m, reduce)
    fe = check_functional_eq(f, g, tol)
    rep = VerificationReport("falsifier", method_name(m), asdict(g), fe.points_tested + 2,
                             fe.max_residual, fe.worst_point, list(fe.failures), tol=tol,
                             notes=list(fe.notes))

    def add(point, r):
        if rep.worst_point is None or r > rep.max_residual:
            rep.max_residual, rep.worst_point = r, point
        if not r <= tol:
            rep.failures.append((point, r))

    at_one = abs(f(1.0) - 1.0)
    add(1 + 0j, at_one)
    im_psi = imag_digamma_at_1(f)
    add(complex(1.0, 0.0), abs(im_psi - 2.0 * math.pi * k))
    rep.notes.append(f"k={k}: |f(1) - 1| = {at_one:.3g}, Im psi_f(1) = {im_psi:.12g}")
    if k != 0:
        conj = check_conjugate_symmetry(f, g, tol=1e-8)
        rep.points_tested += conj.points_tested
        if conj.passed:
            rep.failures.append((1 + 0j, math.inf))
            rep.max_residual = math.inf
            rep.notes.append("conjugate-symmetry suite did not flag the falsifier")
        else:
            rep.notes.append(f"conjugate-symmetry suite flagged {len(conj.failures)} points")
    rep.passed = not rep.failures
    return rep


# ---------------------------------------------------------------------------
# cross-route comparison
# ---------------------------------------------------------------------------


@dataclass
class CompareRow:
    point: complex
    values: dict  # method -> EvalResult
    consensus: complex
    deviation: float


def _median_by_modulus(values):
    ordered = sorted(values, key=abs)
    return ordered[(len(ordered) - 1) // 2]


def cross_compare(methods: Sequence[str], g: GridSpec | None = None, tol: float = 1e-8,
                  reduce: bool = True) -> VerificationReport:
    """Max pairwise relative deviation between routes at every grid point.

    Deviations are measured against the consensus, the median of the values
    by modulus.  The per-point values are kept in ``report.rows``.
    """
    methods = list(methods)
    if not methods:
        raise ValueError("need at least one method")
    for m in methods:
        if m not in METHODS:
            raise KeyError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    g = g or standard_grid()
    points = g.points()

    def at(s):
        try:
            vals = {m: evaluate(m, s, reduce=reduce) for m in methods}
        except (GammaForgeError, ArithmeticError, ValueError) as exc:
            return None, f"{s}: {type(exc).__name__}: {exc}"
        consensus = _median_by_modulus([r.value for r in vals.values()])
        dev = 0.0
        for i, a in enumerate(methods):
            for b in methods[i + 1:]:
                dev = max(dev, abs(vals[a].value - vals[b].value) / abs(consensus))
        return CompareRow(s, vals, consensus, dev), None

    results = parallel_map(at, points)
    rep = VerificationReport("compare", ",".join(methods), asdict(g), len(points), 0.0, None, tol=tol)
    for s, (row, note) in zip(points, results):
        dev = math.inf if row is None else row.deviation
        if note:
            rep.notes.append(note)
        else:
            rep.rows.append(row)
        if rep.worst_point is None or dev > rep.max_residual:
            rep.max_residual, rep.worst_point = dev, s
        if not dev <= tol:
            rep.failures.append((s, dev))
    rep.passed = not rep.failures
    return rep
