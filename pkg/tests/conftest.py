import random

import networkx as nx
import pytest

from arhub import build_instance

# triad layout: h1=0, h2=1, h3=2 occupied; x=3, y=4, z=5 empty.
TRIAD_EDGES = [(0, 4), (4, 2), (1, 4), (0, 3), (3, 1), (1, 5), (5, 2)]
X, Y, Z, W = 3, 4, 5, 6

CRITERIA: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    CRITERIA[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        ok, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def triad():
    return build_instance(6, TRIAD_EDGES, {0: 1, 1: 2, 2: 1}, 2)


@pytest.fixture
def triad_relaxed():
    return build_instance(7, TRIAD_EDGES + [(1, W)], {0: 1, 1: 1, 2: 1}, 3, 2)


@pytest.fixture
def star():
    return build_instance(6, [(0, v) for v in range(1, 6)], {0: 0}, 1)


@pytest.fixture
def k23():
    return build_instance(5, [(h, v) for h in (0, 1) for v in (2, 3, 4)], {0: 1, 1: 1}, 2)


def connected_atlas(max_n=7):
    return [
        g for g in nx.graph_atlas_g()[1:]
        if g.number_of_nodes() <= max_n and nx.is_connected(g)
    ]


def random_instance(rng: random.Random, n, edges, occupied_p=0.5):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    occ = [v for v in range(n) if rng.random() < occupied_p]
    ub = {v: rng.randint(0, deg[v]) for v in occ}
    return build_instance(n, edges, ub, rng.randint(0, n - len(occ)))


def small_corpus(seed=0, per_graph=3, max_n=6):
    rng = random.Random(seed)
    out = []
    for g in connected_atlas(max_n):
        for _ in range(per_graph):
            out.append(random_instance(rng, g.number_of_nodes(), list(g.edges())))
    return out
