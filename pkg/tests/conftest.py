import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from coverdecomp.geometry import Point, builtin_polygon

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

POLYGON_NAMES = ["square", "hexagon", "octagon"]


@pytest.fixture(params=POLYGON_NAMES)
def polygon(request):
    return builtin_polygon(request.param)


@pytest.fixture
def square():
    return builtin_polygon("square")


def P(x, y):
    return Point.of(x, y)


def rat(max_den=6, lo=-3, hi=3):
    """Rationals from a coarse grid, so collinear and tied coordinates are common."""
    return st.builds(lambda d, k: Fraction(k, d), st.integers(1, max_den),
                     st.integers(lo * max_den, hi * max_den)).filter(lambda v: lo <= v <= hi)


def point_sets(min_size=1, max_size=14, max_den=4):
    pt = st.builds(Point, rat(max_den), rat(max_den))
    return st.lists(pt, min_size=min_size, max_size=max_size, unique=True)


polygons = st.sampled_from(POLYGON_NAMES).map(builtin_polygon)


def grid_points(n, step=1):
    return [P(i * step, j * step) for i in range(n) for j in range(n)]


def seeded(seed):
    return random.Random(seed)


# One line per acceptance criterion, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
