import json
from fractions import Fraction
from importlib import resources

import numpy as np
import pytest

from varsphere.graphs import ColouredGraph, parse_graph
from varsphere.symmetry import parse_gain_graph


def fixture_text(name: str) -> str:
    return (resources.files("varsphere") / "fixtures" / name).read_text()


def load_graph(name: str) -> ColouredGraph:
    return parse_graph(fixture_text(name))


def load_gain(name: str):
    return parse_gain_graph(fixture_text(name))


def load_json(name: str):
    return json.loads(fixture_text(name))


def euclidean_rigidity_rank(n: int, edges, dim: int, seed: int = 0) -> int:
    """Independent oracle: rank of the bar-joint rigidity matrix in R^dim at random integer points."""
    from varsphere.exact import rank
    rng = np.random.default_rng(seed)
    p = [[Fraction(int(x)) for x in rng.integers(-10**6, 10**6, size=dim)] for _ in range(n)]
    rows = []
    for u, v in edges:
        row = [Fraction(0)] * (dim * n)
        for a in range(dim):
            row[dim * (u - 1) + a] = p[u - 1][a] - p[v - 1][a]
            row[dim * (v - 1) + a] = p[v - 1][a] - p[u - 1][a]
        rows.append(row)
    return rank(rows) if rows else 0


@pytest.fixture
def fig1a():
    return load_graph("fig1a.json")


@pytest.fixture
def fig1b():
    return load_graph("fig1b.json")


@pytest.fixture
def fig2():
    return load_graph("fig2.json")


# ---------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion, repeated in the summary

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {number:>2}: {'PASS' if ok else 'FAIL'} | {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
