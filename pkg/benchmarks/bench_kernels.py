"""Time every kernel on both backends and check they agree.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

The numba column excludes compilation: each kernel is called once before
timing.  The last column is the relative difference between the two
results, which should sit at rounding level.
"""

import argparse
import json
import math
import time

import numpy as np

from gammaforge import kernels
from gammaforge.contours import default_contour, hankel_nodes

x16, w16 = np.polynomial.legendre.leggauss(16)
UNIT_X, UNIT_W = 0.5 * (x16 + 1.0), 0.5 * w16
Z, W = hankel_nodes(default_contour(-0.3 - 4j).doubled())

CASES = {
    "harmonic_sum": (1 << 22,),
    "log1p_ratio_sum": (0.7 + 3j, 1, 1 << 20),
    "weierstrass_log_sum": (0.7 + 3j, 1, 1 << 20),
    "shifted_log_sum": (0.7 + 3j, 0, 1 << 20),
    "log_ep_sum": (0.7 + 3j, 1.0 + 0j, 1.0, 1, 1, 1 << 20),
    "hurwitz_partial": (2.5 + 1j, 1.7, 0, 1 << 20),
    "sawtooth_sum": (1.0 + 0j, 1.7 + 2j, 0, 1 << 14, UNIT_X, UNIT_W),
    "contour_sum": (Z, W, -0.3 - 4j),
}

# the sizes the Gamma routes actually use: many short calls
SMALL = {
    "sawtooth_sum": (1.0 + 0j, 1.7 + 2j, 0, 127, UNIT_X, UNIT_W),
    "log1p_ratio_sum": (0.7 + 3j, 1, 64),
    "hurwitz_partial": (2.5 + 1j, 1.7, 0, 63),
}


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def scalar(out):
    return out[0] if isinstance(out, tuple) else out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rows = []
    print(f"{'kernel':22s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s} {'rel diff':>9s}")
    for name, case in CASES.items():
        nb, np_ = kernels.IMPLEMENTATIONS[name]
        nb(*case)  # compile
        t_nb, out_nb = best_of(nb, case, args.repeat)
        t_np, out_np = best_of(np_, case, args.repeat)
        a, b = scalar(out_nb), scalar(out_np)
        rel = abs(a - b) / max(abs(b), 1e-300)
        rows.append({"kernel": name, "numba_s": t_nb, "numpy_s": t_np, "rel_diff": rel})
        print(f"{name:22s} {1e3 * t_nb:11.3f} {1e3 * t_np:11.3f} {t_np / t_nb:8.1f} {rel:9.1e}")
    print(f"\n{'short calls':22s} {'numba [us]':>11s} {'numpy [us]':>11s} {'speedup':>8s}")
    for name, case in SMALL.items():
        nb, np_ = kernels.IMPLEMENTATIONS[name]
        calls = 1000
        t_nb, _ = best_of(lambda *a: [nb(*a) for _ in range(calls)], case, args.repeat)
        t_np, _ = best_of(lambda *a: [np_(*a) for _ in range(calls)], case, args.repeat)
        rows.append({"kernel": name + " (short)", "numba_s": t_nb / calls, "numpy_s": t_np / calls,
                     "rel_diff": None})
        print(f"{name:22s} {1e6 * t_nb / calls:11.2f} {1e6 * t_np / calls:11.2f} {t_np / t_nb:8.1f}")
    geo = math.exp(sum(math.log(r["numpy_s"] / r["numba_s"]) for r in rows) / len(rows))
    print(f"geometric-mean speedup {geo:.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
