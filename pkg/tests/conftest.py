"""Shared oracles.

mpmath at 30 digits is the independent reference for Gamma, log Gamma,
digamma and Hurwitz zeta; nothing in the package imports it.
"""

import os

import mpmath
import pytest
from hypothesis import settings

mpmath.mp.dps = 30

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def mp_gamma(s):
    return complex(mpmath.gamma(mpmath.mpc(s)))


def mp_rgamma(s):
    return complex(mpmath.rgamma(mpmath.mpc(s)))


def mp_loggamma(s):
    return complex(mpmath.loggamma(mpmath.mpc(s)))


def mp_digamma(s):
    return complex(mpmath.digamma(mpmath.mpc(s)))


def mp_zeta(t, s):
    return complex(mpmath.zeta(mpmath.mpc(t), mpmath.mpc(s)))


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


EULER_GAMMA = float(mpmath.euler)


@pytest.fixture
def sample_points():
    return [0.5, 1.0, 2.5, 0.3 + 2j, 1.7 - 4j, 3.25 + 7.5j, 0.25 - 8j]


# -- acceptance summary -------------------------------------------------------
#
# Tests marked @pytest.mark.criterion(n, title) are rolled up into one
# PASS/FAIL line per criterion at the end of the run.

_criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    ok = call.excinfo is None
    prev = _criteria.get(n, (title, True))
    _criteria[n] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        tr.write_line(f"criterion {n:2d}  {'PASS' if ok else 'FAIL'}  {title}")
