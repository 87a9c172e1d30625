import sys

import pytest
from hypothesis import HealthCheck, settings

from catalog_range.core import CategoryGraph

settings.register_profile("suite", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

# small tree: c under u, u and v under r
R, U, V, C = 0, 1, 2, 3
# path: b under m under t
PB, PM, PT = 0, 1, 2


@pytest.fixture
def fix_t1():
    return CategoryGraph(4, ((C, U), (U, R), (V, R)), kind="tree")


@pytest.fixture
def fix_p1():
    g = CategoryGraph(3, ((PB, PM), (PM, PT)), kind="path")
    return g, [1, 2, 3], [PB, PT, PM]


@pytest.fixture
def fix_sm():
    """Sum-max points ``(position, color, weight)`` with colors A=0, B=1."""
    return ((1, 0, 5), (2, 0, 2), (3, 1, 7))


@pytest.fixture
def report(request):
    """Print one verdict line straight to the terminal, then assert it."""
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def emit(number: int, title: str, ok: bool, detail: str = "", gate: bool = True):
        line = f"[criterion {number}] {title}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        with capman.global_and_fixture_disabled():
            sys.stdout.write("\n" + line + "\n")
            sys.stdout.flush()
        if gate:
            assert ok, line

    return emit
