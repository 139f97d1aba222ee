"""gammaforge command line: eval, compare, verify, constants.

Exit codes: 0 success or suite passed, 1 verification failed, 2 usage or
domain error, 3 numerical non-convergence or overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, replace

from . import __version__
from .errors import ConvergenceError, DomainError, NumericOverflowError
from .routes import METHODS, REGISTRY, evaluate
from .verify import (SUITES, GridSpec, check_conjugate_symmetry, check_duplication, check_falsifier,
                     check_functional_eq, check_log_convexity, check_reflection, check_residues,
                     check_strip_bound, cross_compare, standard_grid)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
FORMATS = ("text", "json", "csv")
CSV_COLUMNS = ("re", "im", "value_re", "value_im", "err_estimate", "method")

# default tolerance per suite when neither flag nor config sets one
SUITE_TOL = {
    "functional": 1e-8, "reflection": 1e-9, "duplication": 1e-8, "residues": 1e-8,
    "conjugate": 1e-10, "strip": 0.0, "convexity": 1e-10, "falsifier": 1e-6,
}

_GRID_KEYS = ("re_min", "re_max", "re_steps", "im_min", "im_max", "im_steps", "pole_exclusion_radius")


@dataclass(frozen=True)
class CliConfig:
    default_tol: float | None = None
    default_grid: GridSpec = field(default_factory=standard_grid)
    output_format: str = "text"
    registry: tuple = METHODS

    def __post_init__(self):
        if self.default_tol is not None and not self.default_tol > 0:
            raise ValueError("default_tol must be positive")
        if len(set(self.registry)) != len(self.registry):
            raise ValueError("registry identifiers must be unique")
        if self.output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {', '.join(FORMATS)}")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accept "a+bi", "a+bj", "bi" or "a,b"."""
    raw = text.strip().replace(" ", "")
    try:
        if "," in raw:
            re_part, im_part = raw.split(",")
            return complex(float(re_part), float(im_part))
        return complex(raw.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}; use a+bi or a,b") from None


def load_config(path: str | None) -> CliConfig:
    """key=value lines; '#' starts a comment."""
    if path is None:
        return CliConfig()
    values = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, val = (p.strip() for p in line.split("=", 1))
        values[key] = val
    grid = standard_grid()
    kw = {}
    try:
        for key, val in values.items():
            if key == "default_tol":
                kw["default_tol"] = float(val)
            elif key in ("output_format", "format"):
                kw["output_format"] = val
            elif key in _GRID_KEYS:
                cast = int if key.endswith("steps") else float
                grid = replace(grid, **{key: cast(val)})
            else:
                raise UsageError(f"{path}: unknown config key {key!r}")
        return CliConfig(default_grid=grid, **kw)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for s, r in rows:
        w.writerow([repr(s.real), repr(s.imag), repr(r.value.real), repr(r.value.imag),
                    repr(r.err_estimate), r.method])
    return buf.getvalue()


def _fmt_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{z.real:.16g}{sign}{abs(z.imag):.16g}i"


def _grid_from_args(args, cfg: CliConfig) -> GridSpec:
    grid = cfg.default_grid
    kw = {k: getattr(args, k) for k in _GRID_KEYS if getattr(args, k, None) is not None}
    try:
        return replace(grid, **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _format(args, cfg):
    return args.format or cfg.output_format


def _tol(args, cfg, fallback):
    if args.tol is not None:
        if args.tol < 0:
            raise UsageError("--tol must be non-negative")
        return args.tol
    return cfg.default_tol if cfg.default_tol is not None else fallback


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _check_method(name):
    if name not in REGISTRY:
        listing = "\n".join(f"  {m:15s} {r.summary}" for m, r in REGISTRY.items())
        raise UsageError(f"unknown method {name!r}; registered methods:\n{listing}")


def cmd_eval(args, cfg, out) -> int:
    _check_method(args.method)
    s = parse_complex(args.s)
    tol = _tol(args, cfg, 1e-10)
    res = evaluate(args.method, s, tol=tol if tol > 0 else 1e-10, reduce=args.reduce)
    fmt = _format(args, cfg)
    if fmt == "json":
        out.write(json.dumps({
            "method": res.method, "s": {"re": s.real, "im": s.imag},
            "value": {"re": res.value.real, "im": res.value.imag},
            "err_estimate": res.err_estimate, "work": res.work,
        }) + "\n")
    elif fmt == "csv":
        out.write(_csv_text([(s, res)]))
    else:
        out.write(f"Gamma({_fmt_complex(s)}) = {_fmt_complex(res.value)}\n")
        out.write(f"  method {res.method}, err_estimate {res.err_estimate:.3g}, work {res.work}\n")
    return EXIT_OK


def cmd_compare(args, cfg, out) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise UsageError("compare needs at least two methods")
    for m in methods:
        _check_method(m)
    grid = _grid_from_args(args, cfg)
    tol = _tol(args, cfg, 1e-8)
    rep = cross_compare(methods, grid, tol, reduce=args.reduce)
    fmt = _format(args, cfg)
    if fmt == "json":
        out.write(rep.to_json(indent=2) + "\n")
    elif fmt == "csv":
        rows = [(row.point, row.values[m]) for row in rep.rows for m in methods]
        out.write(_csv_text(rows))
    else:
        out.write(f"{'re':>8s} {'im':>8s}  {'consensus':>44s}  deviation\n")
        for row in rep.rows:
            out.write(f"{row.point.real:8.4g} {row.point.imag:8.4g}  {_fmt_complex(row.consensus):>44s}"
                      f"  {row.deviation:.3g}\n")
        _summary(rep, out)
    for note in rep.notes:
        print(note, file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _summary(rep, out):
    worst = "-" if rep.worst_point is None else _fmt_complex(rep.worst_point)
    out.write(f"{rep.suite} [{rep.method}]: {rep.points_tested} points, max residual "
              f"{rep.max_residual:.3g} at {worst}, tol {rep.tol:g}: "
              f"{'PASS' if rep.passed else 'FAIL'} ({len(rep.failures)} failures)\n")


def cmd_verify(args, cfg, out) -> int:
    suite = args.suite
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    _check_method(args.method)
    tol = _tol(args, cfg, SUITE_TOL[suite])
    grid = _grid_from_args(args, cfg)
    m, red = args.method, args.reduce
    if suite == "functional":
        rep = check_functional_eq(m, grid, tol, red)
    elif suite == "reflection":
        rep = check_reflection(m, grid, tol, red)
    elif suite == "duplication":
        dup = GridSpec(0.3, 2.0, 18, -4.0, 4.0, 17, 0.25)
        rep = check_duplication(m, _grid_from_args(args, replace(cfg, default_grid=dup)), tol, red)
    elif suite == "residues":
        rep = check_residues(m, args.n_max, tol, red)
    elif suite == "conjugate":
        rep = check_conjugate_symmetry(m, grid, tol, red)
    elif suite == "strip":
        rep = check_strip_bound(m, args.a, args.b, args.y_max, tol, reduce=red)
    elif suite == "convexity":
        rep = check_log_convexity(m, args.a, args.b, args.steps, tol, red)
    else:
        fgrid = GridSpec(0.25, 4.0, 16, -2.0, 2.0, 9, 0.25)
        rep = check_falsifier(args.k, m, _grid_from_args(args, replace(cfg, default_grid=fgrid)), tol, red)
    text = rep.to_json(indent=2)
    if args.report:
        try:
            with open(args.report, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write report {args.report}: {exc}") from None
    fmt = _format(args, cfg)
    if fmt == "json":
        out.write(text + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("re", "im", "residual"))
        for p, r in rep.failures:
            w.writerow((repr(p.real), repr(p.imag), repr(r)))
        out.write(buf.getvalue())
    else:
        _summary(rep, out)
    for note in rep.notes:
        print(note, file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def constants_table() -> list[dict]:
    from .hurwitz import zeta_prime_0
    from .integral_reps import gaussian_integral_report
    from .products import euler_mascheroni

    n = 1 << 20
    rows = [{"name": "euler_gamma", "value": euler_mascheroni(n), "err_estimate": 1.0 / (8.0 * n * n),
             "route": f"H_N - log N - 1/(2N), N = {n}"}]
    z = zeta_prime_0()
    rows.append({"name": "zeta_prime_0", "value": z.value.real, "err_estimate": z.err_estimate,
                 "route": "hurwitz d/dt zeta(t, 1) at t = 0"})
    half = evaluate("lerch", 0.5)
    rows.append({"name": "gamma_half", "value": half.value.real, "err_estimate": half.err_estimate,
                 "route": "lerch", "closed_form": "sqrt(pi)", "closed_value": math.sqrt(math.pi)})
    for x in (0.1, 0.25, 1.0 / 3.0, 0.5):
        prod = evaluate("hankel", x).value * evaluate("hankel", 1.0 - x).value
        rows.append({"name": f"gamma({x:.6g})*gamma({1 - x:.6g})", "value": prod.real,
                     "err_estimate": abs(prod.real - math.pi / math.sin(math.pi * x)),
                     "route": "hankel", "closed_form": f"pi/sin(pi*{x:.6g})",
                     "closed_value": math.pi / math.sin(math.pi * x)})
    g = gaussian_integral_report()
    rows.append({"name": "gaussian_integral", "value": g["value"], "err_estimate": g["err_estimate"],
                 "route": "quadrature of exp(-x^2) on [0, inf)", "closed_form": "gamma(1/2)/2",
                 "closed_value": g["half_gamma_half"], "note": g["note"]})
    return rows


def cmd_constants(args, cfg, out) -> int:
    rows = constants_table()
    fmt = _format(args, cfg)
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("name", "value", "err_estimate", "route"))
        for r in rows:
            w.writerow((r["name"], repr(r["value"]), repr(r["err_estimate"]), r["route"]))
        out.write(buf.getvalue())
    else:
        for r in rows:
            line = f"{r['name']:22s} {r['value']:.15g}  (err {r['err_estimate']:.2g}, {r['route']})"
            if "closed_form" in r:
                line += f"  vs {r['closed_form']} = {r['closed_value']:.15g}"
            out.write(line + "\n")
            if "note" in r:
                out.write(f"  note: {r['note']}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p, grid=False):
    p.add_argument("--tol", type=float, default=None, help="tolerance (default per command)")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--config", default=None, help="key=value file overriding defaults")
    p.add_argument("--reduce", action="store_true",
                   help="move out-of-domain arguments right with Gamma(s+1) = s Gamma(s)")
    if grid:
        for key in _GRID_KEYS:
            cast = int if key.endswith("steps") else float
            p.add_argument("--" + key.replace("_", "-"), dest=key, type=cast, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammaforge", description="Gamma by many routes, cross-checked.")
    parser.add_argument("--version", action="version", version=f"gammaforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate Gamma(s) by one route")
    p.add_argument("--method", default="lerch")
    p.add_argument("--s", required=True, help='argument, "a+bi" or "a,b" (use --s=-1+2i for negatives)')
    _add_common(p)

    p = sub.add_parser("compare", help="compare routes over a grid")
    p.add_argument("--methods", required=True, help="comma-separated route identifiers")
    _add_common(p, grid=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--method", default="lerch")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.add_argument("--k", type=int, default=1, help="falsifier index")
    p.add_argument("--n-max", dest="n_max", type=int, default=12, help="largest residue order")
    p.add_argument("--a", type=float, default=1.0, help="left edge for strip/convexity")
    p.add_argument("--b", type=float, default=2.0, help="right edge for strip/convexity")
    p.add_argument("--y-max", dest="y_max", type=float, default=20.0)
    p.add_argument("--steps", type=int, default=100, help="samples for convexity")
    _add_common(p, grid=True)

    p = sub.add_parser("constants", help="print derived constants")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--config", default=None)
    return parser


COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "verify": cmd_verify, "constants": cmd_constants}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, DomainError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"gammaforge: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, NumericOverflowError, OverflowError) as exc:
        print(f"gammaforge: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"gammaforge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
