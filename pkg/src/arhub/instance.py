"""Domain model: topology graph, instances, housings and validity checks.

Vertices are dense indices ``0..n-1``.  An inhabitant is identified by the
vertex it occupies, so the upper-bound map ``ub`` doubles as the inhabitant
assignment: its keys are exactly the occupied vertices.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    DuplicateOccupancy,
    InvalidInstance,
    MalformedGraph,
    PlacedOnOccupied,
    TooFewVertices,
    UpperBoundExceedsDegree,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as sorted adjacency tuples."""

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.adjacency)
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < n:
                    raise MalformedGraph(f"vertex {v} has dangling neighbour {u}")
                if u == v:
                    raise MalformedGraph(f"self-loop at vertex {v}")
                if u <= prev:
                    raise MalformedGraph(f"adjacency of {v} is not sorted and duplicate-free")
                prev = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self._adjsets[u]:
                    raise MalformedGraph(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise MalformedGraph("negative vertex count")
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            if len(e) != 2:
                raise MalformedGraph(f"edge {e!r} does not have two endpoints")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedGraph(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise MalformedGraph(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise MalformedGraph(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(tuple(sorted(s)) for s in adj))

    @cached_property
    def _adjsets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    def __len__(self) -> int:
        return len(self.adjacency)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * len(self.adjacency)
        comps = []
        for s in range(len(self.adjacency)):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        queue.append(u)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @property
    def is_forest(self) -> bool:
        return self.edge_count == len(self.adjacency) - len(self.components)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph on ``keep``, renumbered densely; returns (graph, new->old)."""
        old = tuple(sorted(set(keep)))
        index = {v: i for i, v in enumerate(old)}
        adj = tuple(
            tuple(sorted(index[u] for u in self.adjacency[v] if u in index)) for v in old
        )
        return Graph(adj), old

    def without_edges(self, drop) -> "Graph":
        """Copy of the graph without the edges ``(u, v)`` for which ``drop(u, v)``."""
        adj = tuple(
            tuple(u for u in nbrs if not drop(v, u)) for v, nbrs in enumerate(self.adjacency)
        )
        return Graph(adj)


class Housing:
    """Set of empty vertices receiving refugees; iterates in sorted order."""

    __slots__ = ("placed",)

    def __init__(self, vertices: Iterable[int] = ()):
        self.placed: tuple[int, ...] = tuple(sorted(set(int(v) for v in vertices)))

    def __iter__(self):
        return iter(self.placed)

    def __len__(self):
        return len(self.placed)

    def __contains__(self, v):
        return v in set(self.placed)

    def __eq__(self, other):
        if isinstance(other, Housing):
            return self.placed == other.placed
        if isinstance(other, (set, frozenset)):
            return set(self.placed) == other
        return NotImplemented

    def __hash__(self):
        return hash(self.placed)

    def __or__(self, other):
        return Housing(self.placed + tuple(other))

    def __repr__(self):
        return f"Housing({list(self.placed)})"


@dataclass(frozen=True)
class Instance:
    """An ARH-UB instance; ``t`` set means the relaxed (RARH-UB) question."""

    graph: Graph
    ub: Mapping[int, int]
    refugees: int
    t: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ub", dict(sorted(self.ub.items())))

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @cached_property
    def occupied(self) -> tuple[int, ...]:
        return tuple(self.ub)

    @cached_property
    def empty(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v not in self.ub)

    def is_occupied(self, v: int) -> bool:
        return v in self.ub

    @property
    def inhabitant_count(self) -> int:
        return len(self.ub)

    @property
    def relaxed(self) -> bool:
        return self.t is not None

    @cached_property
    def occupied_neighbours(self) -> tuple[tuple[int, ...], ...]:
        """For every vertex, its occupied neighbours."""
        ub = self.ub
        return tuple(tuple(u for u in nbrs if u in ub) for nbrs in self.graph.adjacency)

    @cached_property
    def empty_neighbours(self) -> tuple[tuple[int, ...], ...]:
        ub = self.ub
        return tuple(tuple(u for u in nbrs if u not in ub) for nbrs in self.graph.adjacency)

    def replace(self, **changes) -> "Instance":
        return replace(self, **changes)


@dataclass
class RawInstance:
    """Unchecked instance data as read from a file."""

    vertices: int
    edges: list
    inhabitants: list  # (vertex, ub) pairs
    refugees: int
    t: int | None = None


@dataclass
class SolveReport:
    verdict: bool
    witness: Housing | None
    solver: str
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def answer(self) -> str:
        return "YES" if self.verdict else "NO"


class Excess(NamedTuple):
    per_inhabitant: dict[int, int]
    total: int


class DegreeStats(NamedTuple):
    max_degree: int
    is_forest: bool
    is_complete_bipartite_between_parts: bool


def validate_instance(raw: RawInstance | Instance) -> Instance:
    """Check every instance invariant and return a checked :class:`Instance`."""
    if isinstance(raw, Instance):
        graph = raw.graph
        pairs = list(raw.ub.items())
        refugees, t = raw.refugees, raw.t
    else:
        graph = Graph.from_edges(int(raw.vertices), raw.edges)
        pairs = [(int(v), int(b)) for v, b in raw.inhabitants]
        refugees, t = raw.refugees, raw.t
    n = graph.vertex_count
    ub: dict[int, int] = {}
    for v, b in pairs:
        if not 0 <= v < n:
            raise InvalidInstance(f"inhabitant placed on unknown vertex {v}")
        if v in ub:
            raise DuplicateOccupancy(f"vertex {v} is occupied twice")
        if b < 0:
            raise InvalidInstance(f"negative upper-bound at vertex {v}")
        if b > graph.degree(v):
            raise UpperBoundExceedsDegree(
                f"ub({v}) = {b} exceeds its degree {graph.degree(v)}"
            )
        ub[v] = b
    if int(refugees) != refugees or refugees < 0:
        raise InvalidInstance("refugee count must be a natural number")
    if t is not None and (int(t) != t or t < 0):
        raise InvalidInstance("relaxation budget must be a natural number")
    if n < len(ub) + refugees:
        raise TooFewVertices(f"|V| = {n} < |I| + R = {len(ub) + refugees}")
    return Instance(graph, ub, int(refugees), None if t is None else int(t))


def build_instance(n, edges, ub, refugees, t=None) -> Instance:
    """Convenience constructor: ``ub`` maps occupied vertex -> bound."""
    return validate_instance(RawInstance(n, list(edges), list(dict(ub).items()), refugees, t))


def _check_housing(inst: Instance, housing) -> tuple[int, ...]:
    placed = tuple(housing)
    for v in placed:
        if not 0 <= v < inst.n:
            raise InvalidInstance(f"housing uses unknown vertex {v}")
        if v in inst.ub:
            raise PlacedOnOccupied(f"vertex {v} is occupied by an inhabitant")
    return placed


def neighbour_counts(inst: Instance, housing) -> dict[int, int]:
    """Number of refugees in the neighbourhood of every inhabitant."""
    counts = dict.fromkeys(inst.ub, 0)
    occ_nbrs = inst.occupied_neighbours
    for v in set(_check_housing(inst, housing)):
        for h in occ_nbrs[v]:
            counts[h] += 1
    return counts


def is_inhabitants_respecting(inst: Instance, housing) -> bool:
    counts = neighbour_counts(inst, housing)
    ub = inst.ub
    return all(c <= ub[h] for h, c in counts.items())


def excess(inst: Instance, housing) -> Excess:
    counts = neighbour_counts(inst, housing)
    per = {h: max(0, c - inst.ub[h]) for h, c in counts.items()}
    return Excess(per, sum(per.values()))


def is_solution(inst: Instance, housing) -> bool:
    """Full witness check: size R and respecting (or excess <= t when relaxed)."""
    placed = set(_check_housing(inst, housing))
    if len(placed) != inst.refugees:
        return False
    if inst.t is None:
        return is_inhabitants_respecting(inst, placed)
    return excess(inst, placed).total <= inst.t


def degree_stats(inst: Instance) -> DegreeStats:
    g = inst.graph
    n_empty = len(inst.empty)
    complete = all(len(inst.empty_neighbours[h]) == n_empty for h in inst.ub)
    return DegreeStats(g.max_degree, g.is_forest, complete)


def restrict(
    inst: Instance,
    keep: Iterable[int],
    ub: Mapping[int, int] | None = None,
    refugees: int | None = None,
    t: int | None | type(...) = ...,
) -> tuple[Instance, tuple[int, ...]]:
    """Induced sub-instance on ``keep``; returns (instance, new->old mapping).

    ``ub`` optionally overrides bounds (keyed by old vertex ids).  Bounds are
    clamped to the new degree, which never changes what the inhabitant accepts.
    """
    graph, old = inst.graph.induced(keep)
    src = inst.ub if ub is None else ub
    new_ub = {}
    for i, v in enumerate(old):
        if v in inst.ub:
            new_ub[i] = min(src[v], graph.degree(i))
    return (
        Instance(
            graph,
            new_ub,
            inst.refugees if refugees is None else refugees,
            inst.t if t is ... else t,
        ),
        old,
    )


class Timer:
    """Tiny stopwatch used by every solver to fill ``SolveReport.elapsed``."""

    def __init__(self):
        self.start = time.perf_counter()

    def report(self, verdict, witness, solver, **stats) -> SolveReport:
        return SolveReport(
            bool(verdict),
            Housing(witness) if verdict else None,
            solver,
            time.perf_counter() - self.start,
            stats,
        )
