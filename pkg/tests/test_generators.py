import random
from itertools import combinations, product

import networkx as nx
import pytest

from arhub import (
    Graph,
    decode_colouring,
    generate_random,
    reduce_equitable_3col,
    reduce_independent_set,
    reduce_relaxed_hardness,
    solve,
    solve_by_r_subsets,
    solve_relaxed_brute,
)
from arhub.errors import InvalidParams, NotDivisibleBy3
from arhub.formats import dump_instance
from arhub.generators import FAMILIES
from arhub.structured import missing_edges

TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
C6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])


def has_independent_set(H, k):
    return any(
        all(not H.adjacent(u, v) for u, v in combinations(S, 2))
        for S in combinations(range(H.vertex_count), k)
    )


def has_equitable_colouring(H):
    n = H.vertex_count
    for col in product(range(3), repeat=n):
        if any(col.count(c) != n // 3 for c in range(3)):
            continue
        if all(col[u] != col[v] for u, v in H.edges()):
            return True
    return False


def test_is_triangle():
    assert solve_by_r_subsets(reduce_independent_set(TRIANGLE, 1)).verdict
    assert not solve_by_r_subsets(reduce_independent_set(TRIANGLE, 2)).verdict


def test_is_c4_counts():
    inst = reduce_independent_set(C4, 2)
    assert len(inst.empty) == 4 and inst.inhabitant_count == 4
    assert inst.refugees == 2 and set(inst.ub.values()) == {1}


def test_is_too_large_k():
    with pytest.raises(InvalidParams):
        reduce_independent_set(TRIANGLE, 4)


def test_is_round_trip_random():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(1, 8)
        H = Graph.from_edges(n, list(nx.gnp_random_graph(n, 0.4, seed=rng.randrange(10**6)).edges()))
        for k in range(n + 1):
            inst = reduce_independent_set(H, k)
            assert solve(inst).verdict == has_independent_set(H, k)
            assert inst.graph.max_degree <= max(H.max_degree, 2)


def test_eq3col_triangle():
    inst = reduce_equitable_3col(TRIANGLE)
    rep = solve(inst, "branch-and-bound")
    assert rep.verdict
    colours = decode_colouring(TRIANGLE, rep.witness)
    assert sorted(colours) == [0, 1, 2]


def test_eq3col_c6():
    inst = reduce_equitable_3col(C6)
    # 3 copies of C6 with its 6 edges subdivided, 3 size-guards, 6 vertex-guards
    assert inst.n == 3 * (6 + 6) + 3 + 6 == 45
    rep = solve(inst, "branch-and-bound")
    assert rep.verdict
    colours = decode_colouring(C6, rep.witness)
    assert all(colours[u] != colours[v] for u, v in C6.edges())
    assert [colours.count(c) for c in range(3)] == [2, 2, 2]


def test_eq3col_needs_multiple_of_three():
    with pytest.raises(NotDivisibleBy3):
        reduce_equitable_3col(C4)


def test_eq3col_no_instance():
    k4_plus = Graph.from_edges(6, [(u, v) for u, v in combinations(range(4), 2)])
    assert not has_equitable_colouring(k4_plus)
    assert not solve(reduce_equitable_3col(k4_plus), "branch-and-bound").verdict


def test_relaxed_t0_is_plain_reduction():
    for H in (TRIANGLE, C4, C6):
        for k in range(H.vertex_count + 1):
            assert reduce_relaxed_hardness(H, k, 0) == reduce_independent_set(H, k)


def test_relaxed_triangle():
    inst = reduce_relaxed_hardness(TRIANGLE, 1, 1)
    assert inst.t == 1 and inst.refugees == 2
    rep = solve_relaxed_brute(inst)
    assert rep.verdict and rep.stats["excess"] == 1
    assert not solve_relaxed_brute(reduce_relaxed_hardness(TRIANGLE, 2, 1)).verdict


def test_relaxed_round_trip_random():
    rng = random.Random(5)
    for _ in range(8):
        n = rng.randint(1, 6)
        H = Graph.from_edges(n, list(nx.gnp_random_graph(n, 0.5, seed=rng.randrange(10**6)).edges()))
        for t in (1, 2):
            for k in range(n + 1):
                inst = reduce_relaxed_hardness(H, k, t)
                assert solve_relaxed_brute(inst).verdict == has_independent_set(H, k)


def test_generate_tree_seed7():
    inst, meta = generate_random("tree", {"n": 8}, seed=7)
    assert inst.graph.is_forest and inst.n == 8 and meta == {}


def test_generate_nearly_complete_missing():
    inst, meta = generate_random("nearly_complete", {"a": 3, "b": 4, "p": 2}, seed=1)
    assert missing_edges(inst) == 2 and len(meta["missing"]) == 2


@pytest.mark.parametrize("family", FAMILIES)
def test_generate_deterministic(family):
    params = {"n": 9, "a": 3, "b": 4, "p": 2, "k": 2}
    a = generate_random(family, params, seed=3)
    b = generate_random(family, params, seed=3)
    assert dump_instance(a.instance) == dump_instance(b.instance) and a.meta == b.meta


@pytest.mark.parametrize("n", range(1, 15))
def test_family_promises(n):
    assert generate_random("tree", {"n": n}, seed=n).instance.graph.is_forest
    assert generate_random("maxdeg2", {"n": n}, seed=n).instance.graph.max_degree <= 2
    if n >= 3:
        g = generate_random("cycle", {"n": n}, seed=n).instance.graph
        assert g.edge_count == n and g.max_degree == 2


def test_zero_prob_knob():
    inst, _ = generate_random("tree", {"n": 40, "zero_prob": 1.0, "occupied": 0.5}, seed=1)
    assert inst.ub and set(inst.ub.values()) == {0}


def test_generate_bad_params():
    with pytest.raises(InvalidParams):
        generate_random("tree", {}, seed=0)
    with pytest.raises(InvalidParams):
        generate_random("hypercube", {"n": 3}, seed=0)
    with pytest.raises(InvalidParams):
        generate_random("tree", {"n": 4, "occupied": 2}, seed=0)
    with pytest.raises(InvalidParams):
        generate_random("nearly_complete", {"a": 1, "b": 1, "p": 2}, seed=0)
