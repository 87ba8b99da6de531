import json
from contextlib import contextmanager
from fractions import Fraction
from importlib.resources import files

import pytest

from refinery.hexagon import HEXAGON, build_hexagon_instance, edge_midpoints, simplex_vertices

HALF = Fraction(1, 2)

_ACCEPTANCE: list[tuple[str, bool]] = []


def load_schema(name: str) -> dict:
    return json.loads(files("refinery").joinpath(f"schemas/{name}.schema.json").read_text())


def record_criterion(label: str, ok: bool) -> None:
    _ACCEPTANCE.append((label, ok))
    print(f"{'PASS' if ok else 'FAIL'}  {label}")


@contextmanager
def criterion(label: str):
    """Record PASS if the block completes, FAIL if it raises (then re-raise)."""
    try:
        yield
    except BaseException:
        record_criterion(label, False)
        raise
    record_criterion(label, True)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _ACCEPTANCE:
        terminalreporter.line(f"{'PASS' if ok else 'FAIL'}  {label}")


@pytest.fixture(scope="session")
def hexagon():
    return [tuple(Fraction(x) for x in v) for v in HEXAGON]


@pytest.fixture(scope="session")
def simplex6():
    return simplex_vertices(6)


@pytest.fixture(scope="session")
def mids6():
    return edge_midpoints(6)


@pytest.fixture(scope="session")
def inst():
    return build_hexagon_instance()
