import pytest

from arhub import (
    Graph,
    Housing,
    RawInstance,
    build_instance,
    degree_stats,
    excess,
    is_inhabitants_respecting,
    is_solution,
    neighbour_counts,
    validate_instance,
)
from arhub.errors import (
    DuplicateOccupancy,
    InvalidInstance,
    MalformedGraph,
    PlacedOnOccupied,
    TooFewVertices,
    UpperBoundExceedsDegree,
)
from arhub.instance import restrict

from conftest import X, Y, Z, W


def test_triad_counts(triad):
    assert neighbour_counts(triad, [X, Z]) == {0: 1, 1: 2, 2: 1}
    assert is_solution(triad, [X, Z])


def test_triad_y_blocks_second_refugee(triad):
    assert is_inhabitants_respecting(triad, [Y])
    assert not is_inhabitants_respecting(triad, [Y, X])
    assert not is_inhabitants_respecting(triad, [Y, Z])


def test_triad_relaxed_excess_values(triad_relaxed):
    assert excess(triad_relaxed, [X, Y, Z]).total == 4
    assert excess(triad_relaxed, [X, Z, W]).total == 2
    assert excess(triad_relaxed, [X, Z, W]).per_inhabitant == {0: 0, 1: 2, 2: 0}


def test_triad_degree_stats(triad):
    # h2 touches x, y and z
    assert degree_stats(triad).max_degree == 3
    assert not degree_stats(triad).is_forest


def test_empty_housing_respects_everyone(triad):
    assert is_inhabitants_respecting(triad, [])
    assert not is_solution(triad, [])


def test_housing_on_occupied_vertex(triad):
    with pytest.raises(PlacedOnOccupied):
        neighbour_counts(triad, [0])


def test_housing_unknown_vertex(triad):
    with pytest.raises(InvalidInstance):
        is_solution(triad, [17])


@pytest.mark.parametrize(
    "raw, error",
    [
        (RawInstance(2, [(0, 0)], [], 0), MalformedGraph),
        (RawInstance(2, [(0, 1), (1, 0)], [], 0), MalformedGraph),
        (RawInstance(2, [(0, 2)], [], 0), MalformedGraph),
        (RawInstance(2, [(0, 1)], [(0, 1), (0, 1)], 0), DuplicateOccupancy),
        (RawInstance(2, [(0, 1)], [(0, 2)], 0), UpperBoundExceedsDegree),
        (RawInstance(2, [(0, 1)], [(0, 1)], 2), TooFewVertices),
        (RawInstance(2, [(0, 1)], [(0, -1)], 0), InvalidInstance),
        (RawInstance(2, [(0, 1)], [], -1), InvalidInstance),
        (RawInstance(2, [(0, 1)], [], 0, -1), InvalidInstance),
    ],
)
def test_validation_errors(raw, error):
    with pytest.raises(error):
        validate_instance(raw)


def test_graph_rejects_asymmetric_adjacency():
    with pytest.raises(MalformedGraph):
        Graph(((1,), ()))


def test_graph_components_and_forest():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert g.components == ((0, 1, 2), (3, 4))
    assert g.is_forest
    assert not Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]).is_forest


def test_housing_is_sorted_set():
    h = Housing([5, 3, 5])
    assert list(h) == [3, 5]
    assert h == {3, 5}
    assert 3 in h and 4 not in h


def test_restrict_clamps_bounds(triad):
    sub, old = restrict(triad, [1, 3, 5])
    assert old == (1, 3, 5)
    assert sub.ub == {0: 2}
    sub, _ = restrict(triad, [1, 3])
    assert sub.ub == {0: 1}


def test_relaxed_solution_uses_budget(triad_relaxed):
    assert is_solution(triad_relaxed, [X, Z, W])
    assert not is_solution(triad_relaxed, [X, Y, Z])
    assert is_solution(triad_relaxed.replace(t=4), [X, Y, Z])


def test_build_instance_round_trip():
    inst = build_instance(3, [(0, 1), (1, 2)], {1: 2}, 2)
    assert inst.occupied == (1,)
    assert inst.empty == (0, 2)
    assert validate_instance(inst) == inst
