from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kaleido.trees import RootedTree, Tree

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 9) -> Tree:
    n = draw(st.integers(min_n, max_n))
    if n == 1:
        return Tree([0])
    if n == 2:
        return Tree([0, 1], [(0, 1)])
    seq = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    g = nx.from_prufer_sequence(seq)
    return Tree(range(n), g.edges())


@st.composite
def rooted_trees(draw, min_n: int = 2, max_n: int = 9) -> RootedTree:
    """Trees rooted at a leaf."""
    t = draw(trees(min_n, max_n))
    leaves = [v for v in t.vertices if t.degree(v) <= 1]
    return RootedTree(t, draw(st.sampled_from(leaves)))


# -- acceptance reporting -----------------------------------------------------------

_criteria: list[tuple[int, str, str, float]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria.append((mark.args[0], mark.args[1], "PASS" if rep.passed else "FAIL", rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, verdict, secs in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n:2d}  {verdict}  {title}  ({secs:.2f} s)")
