import numpy as np
import pytest
from hypothesis import strategies as st

from threeboson import ParamPoint, make_state

R2 = 1 / np.sqrt(2)
R3 = 1 / np.sqrt(3)


@pytest.fixture
def ghz():
    return make_state(R2, 0, 0, R2)


@pytest.fixture
def w_state():
    return make_state(0, R3, 0, 0)


@pytest.fixture
def zero3():
    return make_state(1, 0, 0, 0)


finite = st.floats(-1, 1, allow_nan=False, allow_infinity=False)


@st.composite
def amplitudes(draw):
    vals = [complex(draw(finite), draw(finite)) for _ in range(4)]
    n2 = abs(vals[0]) ** 2 + 3 * abs(vals[1]) ** 2 + 3 * abs(vals[2]) ** 2 + abs(vals[3]) ** 2
    if n2 < 1e-6:
        vals[0] = 1.0
    return vals


@st.composite
def param_points(draw, min_s=0.0):
    """Normalized (r, s, t, phi) with s derived from r and t."""
    r = draw(st.floats(0, 1))
    t = draw(st.floats(0, 1))
    rest = 1 - r * r - t * t
    if rest < 0:
        r, t = r / np.sqrt(r * r + t * t + 1e-300), t / np.sqrt(r * r + t * t + 1e-300)
        rest = 0.0
    phi = draw(st.floats(0, 2 * np.pi))
    return ParamPoint(r, np.sqrt(max(rest, 0.0) / 3), t, phi)


def random_point(rng):
    r, t = rng.uniform(0, 1, 2)
    while r * r + t * t > 1:
        r, t = rng.uniform(0, 1, 2)
    return ParamPoint(r, np.sqrt((1 - r * r - t * t) / 3), t, rng.uniform(0, 2 * np.pi))


# PASS/FAIL lines recorded by the acceptance checks, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
