import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from subspace_graph.gf import build_field, factor_prime_power  # noqa: E402
from subspace_graph.graph import build_graph  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def field_q(q: int):
    return build_field(*factor_prime_power(q))


@lru_cache(maxsize=None)
def graph_nq(n: int, q: int):
    return build_graph(field_q(q), n)


@pytest.fixture
def G():
    return graph_nq


@pytest.fixture
def F():
    return field_q


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
