import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from splinedim import load_graph, load_triangulation

FIXTURES = pathlib.Path(__file__).parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    if not name.endswith(".json"):
        name += ".json"
    return str(FIXTURES / name)


GRAPH_FIXTURES = [
    "two_squares.json",
    "morgan_scott.json",
    "nongeneric_lens.json",
    "splittable.json",
    "five_faces.json",
    "shared_edge_triangles.json",
    "pentagon_lens.json",
]

TRIANGULATION_FIXTURES = [
    "subdivided_triangle.json",
    "morgan_scott_triangulation.json",
]


@pytest.fixture
def two_squares():
    return load_graph(fixture_path("two_squares.json"))


@pytest.fixture
def morgan_scott():
    return load_graph(fixture_path("morgan_scott.json"))


@pytest.fixture
def nongeneric_lens():
    return load_graph(fixture_path("nongeneric_lens.json"))


@pytest.fixture
def splittable():
    return load_graph(fixture_path("splittable.json"))


@pytest.fixture
def five_faces():
    return load_graph(fixture_path("five_faces.json"))


@pytest.fixture
def shared_edge_triangles():
    return load_graph(fixture_path("shared_edge_triangles.json"))


@pytest.fixture
def pentagon_lens():
    return load_graph(fixture_path("pentagon_lens.json"))


@pytest.fixture
def subdivided_triangle():
    return load_triangulation(fixture_path("subdivided_triangle.json"))


@pytest.fixture
def morgan_scott_triangulation():
    return load_triangulation(fixture_path("morgan_scott_triangulation.json"))


# one summary line per acceptance criterion at the end of the run
_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE_RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[name]
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line("%s  %s" % (verdict, name))
