import pytest
from hypothesis import strategies as st

from toric_ech.enumeration import directions
from toric_ech.generators import ConvexGenerator


@st.composite
def generators_in_box(draw, max_x=6, max_y=6, allow_h=True):
    """Random convex generators whose endpoints fit in the box."""
    rx, ry = max_x, max_y
    edges = {}
    for a, b in draw(st.permutations(list(directions(max_x, max_y)))):
        if a > rx or b > ry or not draw(st.booleans()):
            continue
        top = min(rx // a if a else ry, ry // b if b else rx)
        k = draw(st.integers(1, top))
        rx -= k * a
        ry -= k * b
        hh = allow_h and a > 0 and b > 0 and draw(st.booleans())
        edges[(a, b)] = (k, hh)
    return ConvexGenerator(edges)


@pytest.fixture
def fig1_pair():
    from toric_ech.generators import parse_generator

    return parse_generator("e_{1,0}^3 e_{2,1} e_{1,3}"), parse_generator("e_{2,1} e_{0,1}^2")


# ---- acceptance summary ------------------------------------------------------

_criteria: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and report.outcome != "failed" and not report.skipped:
        return
    n = getattr(report, "criterion", None)
    if n is not None:
        _criteria.setdefault(n, []).append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok = all(o == "passed" for o in _criteria[n])
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}")
