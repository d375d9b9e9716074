import pytest
from hypothesis import strategies as st

from lpatlas.atlas import build_atlas
from lpatlas.graph import from_matrix
from lpatlas.orbits import orbit_representatives


@pytest.fixture(scope="session")
def atlas():
    return build_atlas(3)


@pytest.fixture(scope="session")
def small_reps():
    """Every orbit representative with 1 to 3 vertices."""
    return [g for n in (1, 2, 3) for g in orbit_representatives(n)]


@st.composite
def graphs(draw, min_n=1, max_n=3):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n))
    return from_matrix([bits[i * n:(i + 1) * n] for i in range(n)])


@st.composite
def permutations(draw, n):
    return tuple(draw(st.permutations(range(1, n + 1))))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
