import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toruscurves import TorusCurveSpec  # noqa: E402

PI = math.pi


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_specs(rng, n, b_lo=0.05, b_hi=0.95, max_winding=7):
    """n random (spec, t) pairs."""
    ps = rng.integers(1, max_winding + 1, n)
    qs = rng.integers(1, max_winding + 1, n)
    bs = rng.uniform(b_lo, b_hi, n)
    ts = rng.uniform(0, 2 * PI, n)
    return [(TorusCurveSpec(int(p), int(q), float(b)), float(t)) for p, q, b, t in zip(ps, qs, bs, ts)]


ACCEPTANCE = pytest.StashKey[dict]()
ACCEPTANCE_COUNT = 11


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    results = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(number, name, ok, detail):
        results[number] = (name, bool(ok), detail)
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(ACCEPTANCE, None)
    if results is None:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, ACCEPTANCE_COUNT + 1):
        if number in results:
            name, ok, detail = results[number]
            terminalreporter.write_line(f"AC{number:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}")
        else:
            terminalreporter.write_line(f"AC{number:>2} FAIL  not run or raised before reporting")
