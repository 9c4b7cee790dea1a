import os
import time

import numpy as np
import pytest

from isokit import kernels

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")
SUITE_BUDGET_S = 600

# acceptance criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}
_SESSION = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    prev = kernels.backend_name()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


@pytest.fixture
def golden():
    def read(name):
        with open(os.path.join(GOLDEN_DIR, name)) as fh:
            return fh.read()

    return read


def pytest_sessionstart(session):
    _SESSION["start"] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _SESSION.get("start", time.perf_counter())
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in range(1, 13):
        if n not in ACCEPTANCE:
            tr.write_line(f"criterion {n:2d}: NOT RUN")
            continue
        ok, detail = ACCEPTANCE[n]
        if n == 12:
            within = elapsed < SUITE_BUDGET_S
            detail += f"; session wall time {elapsed:.0f} s (budget {SUITE_BUDGET_S} s, {'met' if within else 'exceeded'})"
            ok = ok and within
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
