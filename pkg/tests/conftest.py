"""Shared fixtures and the acceptance summary printed at the end of a run."""

import pytest

from geomodel import samples
from geomodel.pipeline import Pipeline

ACCEPTANCE = []


def record(name, passed, detail):
    """Store one acceptance line and echo it (visible with -s)."""
    line = f"{'PASS' if passed else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def pipeline():
    """Factory: a fresh pipeline for a shipped sample."""
    return lambda name: Pipeline.from_text(samples.text(name))


@pytest.fixture(scope="session")
def towers():
    return {n: Pipeline.from_text(samples.text(n)).tower
            for n in ("sqrt2", "s3", "cyclotomic5", "elliptic", "cuberoot")}
