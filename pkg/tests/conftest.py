import pytest

from orientdist.distinguishing import extremal

# criterion id -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}

_extremal_cache: dict = {}


def cached_extremal(g, kind, direction):
    key = (g.n_vertices, g.edges, kind, direction)
    if key not in _extremal_cache:
        _extremal_cache[key] = extremal(g, kind, direction)
    return _extremal_cache[key]


@pytest.fixture(scope="session")
def extremal_cache():
    return cached_extremal


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
