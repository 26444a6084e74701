import pytest
from hypothesis import settings

from coxwords.graph import CoxeterGraph, catalog, parse_graph

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=50, deadline=None)
settings.load_profile("dev")


def path_graph(*labels):
    verts = "abcdefghij"[: len(labels) + 1]
    return CoxeterGraph.build(verts, [(verts[i], verts[i + 1], m) for i, m in enumerate(labels)])


@pytest.fixture
def a1():
    return CoxeterGraph.build(["s"])


@pytest.fixture
def a2():
    return path_graph(3)


@pytest.fixture
def a3():
    return path_graph(3, 3)


@pytest.fixture
def b3():
    return path_graph(4, 3)


@pytest.fixture
def a2t():
    return catalog("A", 2).graph


@pytest.fixture
def a1t():
    return catalog("A", 1).graph


@pytest.fixture
def g2t():
    return catalog("G2").graph


@pytest.fixture
def e6t():
    return catalog("E6").graph


@pytest.fixture
def in_example():
    # path s0 - s1 - s3 with s2 joined to s1 and s3
    return parse_graph(
        """
        vertex s0
        vertex s1
        vertex s2
        vertex s3
        edge s0 s1 3
        edge s1 s3 3
        edge s1 s2 3
        edge s2 s3 3
        """
    )


# -- acceptance summary ----------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and short name")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, text = mark.args
    ok, _ = _criteria.get(n, (True, text))
    if rep.failed or rep.skipped:
        ok = False
    _criteria[n] = (ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {text}")
