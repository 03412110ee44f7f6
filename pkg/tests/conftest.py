import itertools

import numpy as np
import pytest

from cliquegen.graph import Graph, load_les_miserables


def random_graph(n, density, rng):
    pairs = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < density]
    return Graph(n, pairs)


def small_random_graphs(count=104, max_n=12, seed=2024):
    """Random graphs with n <= max_n, cycling through densities 0.1/0.3/0.5/0.8."""
    rng = np.random.default_rng(seed)
    densities = (0.1, 0.3, 0.5, 0.8)
    out = []
    for t in range(count):
        n = int(rng.integers(1, max_n + 1))
        out.append(random_graph(n, densities[t % 4], rng))
    return out


@pytest.fixture(scope="session")
def lesmis():
    return load_les_miserables()


@pytest.fixture
def k4():
    return Graph.complete(4)


# Acceptance results, collected by tests/test_acceptance.py and echoed at the end of the run.
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
