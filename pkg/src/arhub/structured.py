"""Polynomial and FPT solvers that exploit the shape of the topology."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import (
    DegreeTooHigh,
    InfeasibleDetected,
    InvalidModulator,
    NotAForest,
    NotCompleteBipartite,
    TooManyInhabitants,
)
from .instance import Graph, Housing, Instance, Timer, restrict
from .preprocess import ReductionTrace, bipartize, lift_solution, remove_intolerant

# Marks a DP state with no valid housing; stays negative under summation.
INFEASIBLE = -(1 << 62)

FEW_INHABITANTS_LIMIT = 20


# -- forests ---------------------------------------------------------------


@dataclass
class ForestDPCell:
    dp0: int
    dp1: int


def _forest_tables(inst: Instance):
    """Leaf-to-root DP over a bipartized forest.

    Returns (order, parent, cells, picks) where ``picks[v][i]`` lists the
    children of occupied ``v`` that take their ``dp1`` branch in state ``i``.
    """
    n = inst.n
    adj = inst.graph.adjacency
    ub = inst.ub
    parent = [-1] * n
    seen = [False] * n
    order: list[int] = []
    roots: list[int] = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        roots.append(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    queue.append(u)
    cells = [None] * n
    picks: dict[int, tuple[list[int], list[int]]] = {}
    for v in reversed(order):
        children = [u for u in adj[v] if parent[u] == v]
        if v not in ub:
            dp0 = sum(cells[w].dp0 for w in children)
            dp1 = sum(cells[w].dp1 for w in children) + 1
            cells[v] = ForestDPCell(max(dp0, INFEASIBLE), max(dp1, INFEASIBLE))
            continue
        base = sum(cells[w].dp0 for w in children)
        gains = [(cells[w].dp1 - cells[w].dp0, w) for w in children]
        gains = [(g, w) for g, w in gains if g > 0]
        vals = []
        chosen = []
        for i in (0, 1):
            k = ub[v] - i
            if k < 0:
                vals.append(INFEASIBLE)
                chosen.append([])
                continue
            top = heapq.nlargest(k, gains, key=lambda gw: (gw[0], -gw[1]))
            vals.append(base + sum(g for g, _ in top))
            chosen.append([w for _, w in top])
        cells[v] = ForestDPCell(max(vals[0], INFEASIBLE), max(vals[1], INFEASIBLE))
        picks[v] = (chosen[0], chosen[1])
    return order, roots, parent, cells, picks


def forest_max_housing(inst: Instance) -> tuple[int, list[int]]:
    """Maximum respecting housing on a forest topology, with a witness.

    The instance is bipartized first; intolerant inhabitants are handled by
    the DP itself (their "parent housed" state is infeasible).
    """
    inst = bipartize(inst)
    if not inst.graph.is_forest:
        raise NotAForest("topology contains a cycle")
    order, roots, parent, cells, picks = _forest_tables(inst)
    total = 0
    state = [0] * inst.n
    for r in roots:
        c = cells[r]
        best = max(c.dp0, c.dp1)
        total += best
        state[r] = 1 if c.dp1 > c.dp0 else 0
    if total < 0:
        raise AssertionError("forest DP produced an infeasible optimum")
    ub = inst.ub
    adj = inst.graph.adjacency
    placed = []
    for v in order:
        i = state[v]
        children = [u for u in adj[v] if parent[u] == v]
        if v not in ub:
            if i:
                placed.append(v)
            for w in children:
                state[w] = i
        else:
            up = set(picks[v][i])
            for w in children:
                state[w] = 1 if w in up else 0
    return total, sorted(placed)


def solve_forest(inst: Instance):
    timer = Timer()
    best, placed = forest_max_housing(inst)
    R = inst.refugees
    return timer.report(best >= R, placed[:R], "forest", max_housable=best)


# -- maximum degree two ----------------------------------------------------


def _path_max(inst: Instance, keep, ub) -> tuple[int, list[int]]:
    """forest_max_housing on a sub-instance, after removing intolerant inhabitants."""
    sub, old = restrict(inst, keep, ub=ub, refugees=0)
    reduced, trace = remove_intolerant(sub)
    best, placed = forest_max_housing(reduced)
    return best, [old[v] for v in lift_solution(trace, placed)]


def _cycle_max(inst: Instance, comp: tuple[int, ...]) -> tuple[int, list[int]]:
    ub = inst.ub
    occupied = [v for v in comp if v in ub]
    empties = [v for v in comp if v not in ub]
    tight = [h for h in occupied if ub[h] < 2]
    if not tight:
        return len(empties), empties
    v = tight[0]
    u, w = inst.graph.neighbours(v)
    rest = [x for x in comp if x not in (v, u, w)]
    options = [_path_max(inst, rest, None)]
    if ub[v] >= 1:
        for a in (u, w):
            (x,) = [y for y in inst.graph.neighbours(a) if y != v]
            if x in (u, w, v) or ub[x] == 0:
                continue
            lowered = dict(ub)
            lowered[x] -= 1
            best, placed = _path_max(inst, rest, lowered)
            options.append((best + 1, placed + [a]))
    return max(options, key=lambda o: o[0])


def solve_maxdeg2(inst: Instance):
    timer = Timer()
    inst = bipartize(inst)
    if inst.graph.max_degree > 2:
        raise DegreeTooHigh(f"maximum degree {inst.graph.max_degree} > 2")
    total = 0
    placed: list[int] = []
    cycles = 0
    for comp in inst.graph.components:
        edges = sum(inst.graph.degree(v) for v in comp) // 2
        if edges == len(comp) and len(comp) > 2:
            cycles += 1
            best, got = _cycle_max(inst, comp)
        else:
            best, got = _path_max(inst, comp, None)
        total += best
        placed.extend(got)
    R = inst.refugees
    return timer.report(
        total >= R, sorted(placed)[:R], "maxdeg2", max_housable=total, cycles=cycles
    )


# -- dense topologies ------------------------------------------------------


def _fully_connected(inst: Instance) -> list[int]:
    n_empty = len(inst.empty)
    return [h for h in inst.ub if len(inst.empty_neighbours[h]) == n_empty]


def solve_complete_bipartite(inst: Instance):
    timer = Timer()
    if len(_fully_connected(inst)) != inst.inhabitant_count:
        raise NotCompleteBipartite("some inhabitant misses an empty vertex")
    R = inst.refugees
    ok = not inst.ub or R <= min(inst.ub.values())
    return timer.report(ok, inst.empty[:R], "complete-bipartite")


def missing_edges(inst: Instance) -> int:
    """p such that the bipartized topology is K_{|V_I|,|V_U|} minus p edges."""
    present = sum(len(inst.empty_neighbours[h]) for h in inst.ub)
    return inst.inhabitant_count * len(inst.empty) - present


def solve_nearly_complete_bipartite(inst: Instance, p: int | None = None, *, non_strict: bool = False):
    """FPT in the number p of inhabitant-empty pairs that are not adjacent.

    With ``non_strict`` the first rejection uses ``min ub <= R`` literally;
    the default rejects only on ``min ub < R``, which is the sound test.
    """
    timer = Timer()
    actual = missing_edges(inst)
    if p is not None and p != actual:
        raise ValueError(f"declared p = {p} but {actual} edges are missing")
    p = actual
    R = inst.refugees
    if R == 0:
        return timer.report(True, [], "nearly-complete-bipartite", p=p)
    full = _fully_connected(inst)
    if full:
        low = min(inst.ub[h] for h in full)
        if low < R or (non_strict and low <= R):
            return timer.report(False, None, "nearly-complete-bipartite", p=p)
    if p >= inst.inhabitant_count:
        rep = solve_few_inhabitants(inst)
    else:
        keep = [v for v in range(inst.n) if v not in set(full)]
        sub, old = restrict(inst, keep)
        rep = solve_few_inhabitants(sub)
        if rep.verdict:
            rep.witness = Housing(old[v] for v in rep.witness)
    return timer.report(rep.verdict, rep.witness, "nearly-complete-bipartite", p=p, **rep.stats)


# -- few inhabitants -------------------------------------------------------


@dataclass
class NeighbourhoodType:
    mask: frozenset[int]
    capacity: int
    vertices: tuple[int, ...]


def neighbourhood_types(inst: Instance) -> list[NeighbourhoodType]:
    groups: dict[frozenset[int], list[int]] = {}
    for v in inst.empty:
        groups.setdefault(frozenset(inst.occupied_neighbours[v]), []).append(v)
    return [NeighbourhoodType(m, len(vs), tuple(vs)) for m, vs in groups.items()]


def solve_few_inhabitants(inst: Instance, limit: int = FEW_INHABITANTS_LIMIT):
    """Exact search over how many refugees go to each neighbourhood type.

    Empty vertices with the same set of occupied neighbours are
    interchangeable, so a housing is just a count per type.  The search
    prunes on capacity and on exhausted bounds, and memoises failed
    (position, residual bounds, refugees left) states.
    """
    timer = Timer()
    if inst.inhabitant_count > limit:
        raise TooManyInhabitants(f"{inst.inhabitant_count} inhabitants > limit {limit}")
    types = neighbourhood_types(inst)
    R = inst.refugees
    free = [T for T in types if not T.mask]
    constrained = [T for T in types if T.mask]
    # larger capacities first: greedy choices then reach R sooner
    constrained.sort(key=lambda T: (-T.capacity, sorted(T.mask)))
    free_cap = sum(T.capacity for T in free)
    hs = sorted(inst.ub)
    hidx = {h: i for i, h in enumerate(hs)}
    masks = [tuple(hidx[h] for h in T.mask) for T in constrained]
    caps = [T.capacity for T in constrained]
    suffix_cap = [0] * (len(caps) + 1)
    for i in range(len(caps) - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + caps[i]
    # inhabitants still constrained by types at position >= i
    live = [set() for _ in range(len(masks) + 1)]
    for i in range(len(masks) - 1, -1, -1):
        live[i] = live[i + 1] | set(masks[i])
    residual = [inst.ub[h] for h in hs]
    counts = [0] * len(constrained)
    failed = set()
    nodes = 0

    def search(i, need):
        nonlocal nodes
        nodes += 1
        if need <= 0:
            return True
        if i == len(masks):
            return False
        if suffix_cap[i] < need:
            return False
        key = (i, need, tuple(residual[j] for j in sorted(live[i])))
        if key in failed:
            return False
        m = masks[i]
        top = min([caps[i], need] + [residual[j] for j in m])
        for x in range(top, -1, -1):
            for j in m:
                residual[j] -= x
            counts[i] = x
            ok = search(i + 1, need - x)
            for j in m:
                residual[j] += x
            if ok:
                return True
        counts[i] = 0
        failed.add(key)
        return False

    use_free = min(free_cap, R)
    found = search(0, R - use_free)
    stats = {"types": len(types), "nodes": nodes}
    if not found:
        return timer.report(False, None, "few-inhabitants", **stats)
    placed = []
    left = use_free
    for T in free:
        take = min(left, T.capacity)
        placed.extend(T.vertices[:take])
        left -= take
    for T, x in zip(constrained, counts):
        placed.extend(T.vertices[:x])
    return timer.report(True, placed, "few-inhabitants", **stats)


# -- modulator to complete bipartite ---------------------------------------


def _check_modulator(inst: Instance, modulator: set[int]):
    outside_empty = [v for v in inst.empty if v not in modulator]
    for h in inst.ub:
        if h in modulator:
            continue
        nbrs = set(inst.empty_neighbours[h])
        if any(v not in nbrs for v in outside_empty):
            raise InvalidModulator(
                f"inhabitant at {h} outside the modulator misses an empty vertex outside it"
            )


def solve_modulator(inst: Instance, modulator: Iterable[int]):
    """FPT in the size of a vertex set whose removal leaves a complete bipartite graph."""
    timer = Timer()
    inst = bipartize(inst)
    M = set(modulator)
    if any(not 0 <= v < inst.n for v in M):
        raise InvalidModulator("modulator names an unknown vertex")
    _check_modulator(inst, M)
    R = inst.refugees
    m_empty = [v for v in inst.empty if v in M]
    outside_occ = [h for h in inst.ub if h not in M]
    rest_empty = [v for v in inst.empty if v not in M]
    guesses = 0
    for size in range(min(len(m_empty), R) + 1):
        for S in combinations(m_empty, size):
            guesses += 1
            ub = dict(inst.ub)
            for v in S:
                for h in inst.occupied_neighbours[v]:
                    ub[h] -= 1
            if any(b < 0 for b in ub.values()):
                continue
            need = R - size
            if need > len(rest_empty):
                continue
            sub = _collapse(inst, M, ub, outside_occ, rest_empty, need)
            rep = solve_few_inhabitants(sub)
            if rep.verdict:
                placed = [rest_empty[i] for i in rep.witness]
                return timer.report(
                    True, list(S) + placed, "modulator", guesses=guesses, modulator=len(M)
                )
    return timer.report(False, None, "modulator", guesses=guesses, modulator=len(M))


def _collapse(inst, M, ub, outside_occ, rest_empty, need) -> Instance:
    """Residual instance: M's inhabitants plus one aggregate for all others.

    Empty vertices come first (ids 0..len(rest_empty)-1, in order), then the
    modulator's inhabitants, then the aggregate.
    """
    pos = {v: i for i, v in enumerate(rest_empty)}
    k = len(rest_empty)
    adj: list[set[int]] = [set() for _ in range(k)]
    new_ub = {}
    m_occ = [h for h in inst.ub if h in M]
    for h in m_occ:
        i = len(adj)
        adj.append({pos[v] for v in inst.empty_neighbours[h] if v in pos})
        for j in adj[i]:
            adj[j].add(i)
        new_ub[i] = min(ub[h], len(adj[i]))
    if outside_occ:
        i = len(adj)
        adj.append(set(range(k)))
        for j in range(k):
            adj[j].add(i)
        new_ub[i] = min(min(ub[h] for h in outside_occ), k)
    graph = Graph(tuple(tuple(sorted(a)) for a in adj))
    return Instance(graph, new_ub, need)


# -- feedback-edge set -----------------------------------------------------


def feedback_edges(inst: Instance) -> list[tuple[int, int]]:
    """Non-tree edges of the BFS spanning forest grown from the lowest index."""
    adj = inst.graph.adjacency
    n = inst.n
    seen = [False] * n
    tree = set()
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    tree.add((min(u, v), max(u, v)))
                    queue.append(u)
    return [e for e in inst.graph.edges() if e not in tree]


def fes_residual(inst: Instance, F_U, S) -> tuple[Instance, ReductionTrace] | None:
    """Forest instance left after guessing that exactly ``S`` of ``F_U`` is housed.

    Returns None for a rejected guess (too many refugees in some neighbourhood,
    or too few empty vertices left).
    """
    ub = dict(inst.ub)
    for v in S:
        for h in inst.occupied_neighbours[v]:
            ub[h] -= 1
    if any(b < 0 for b in ub.values()):
        return None
    drop = set(F_U)
    keep = [v for v in range(inst.n) if v not in drop]
    sub, old = restrict(inst, keep, ub=ub, refugees=inst.refugees - len(S))
    if len(sub.empty) < sub.refugees:
        return None
    trace = ReductionTrace(old, [], frozenset(S), len(S))
    try:
        reduced, t2 = remove_intolerant(sub)
    except InfeasibleDetected:
        return None
    return reduced, trace.then(t2)


def solve_fes(inst: Instance):
    timer = Timer()
    inst = bipartize(inst)
    F = feedback_edges(inst)
    F_U = sorted({u if u not in inst.ub else v for u, v in F})
    R = inst.refugees
    guesses = 0
    for size in range(min(len(F_U), R) + 1):
        for S in combinations(F_U, size):
            guesses += 1
            res = fes_residual(inst, F_U, S)
            if res is None:
                continue
            sub, trace = res
            best, placed = forest_max_housing(sub)
            if best >= sub.refugees:
                witness = lift_solution(trace, placed[: sub.refugees])
                return timer.report(True, witness, "fes", fes=len(F), guesses=guesses)
    return timer.report(False, None, "fes", fes=len(F), guesses=guesses)
