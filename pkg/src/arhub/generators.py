"""Hardness-reduction constructions and seeded random instance families.

Every reduction keeps the source graph's vertices at ids ``0..n-1`` of the
first block it creates, so witnesses decode without a lookup table.
"""

from __future__ import annotations

import random
from typing import Iterable, NamedTuple

from .errors import InvalidParams, NotDivisibleBy3
from .instance import Graph, Housing, Instance, build_instance


def source_graph(n: int, edges: Iterable) -> Graph:
    return Graph.from_edges(n, edges)


def reduce_independent_set(H: Graph, k: int) -> Instance:
    """Subdivide every edge of H and put a ub=1 guard on each subdivision vertex.

    Vertex ``j`` of H keeps id ``j``; the guard of the ``i``-th edge (in
    ``H.edges()`` order) gets id ``n + i``.
    """
    return reduce_relaxed_hardness(H, k, 0)


def reduce_relaxed_hardness(H: Graph, k: int, t: int) -> Instance:
    """Independent set to the relaxed problem with budget ``t``.

    Each edge of H becomes ``t + 1`` ub=1 guards adjacent to both endpoints,
    so housing both ends costs ``t + 1``.  Then ``t`` pendant gadgets are
    added (an empty vertex next to a ub=0 inhabitant), each housing one
    refugee at excess 1, and R = k + t.  At ``t = 0`` this is exactly
    :func:`reduce_independent_set`, with no budget attached.
    """
    n = H.vertex_count
    if k < 0 or t < 0:
        raise InvalidParams("k and t must be non-negative")
    if k > n:
        raise InvalidParams(f"k = {k} exceeds the {n} vertices of the source graph")
    edges = []
    ub = {}
    nxt = n
    for u, v in H.edges():
        for _ in range(t + 1):
            edges += [(u, nxt), (v, nxt)]
            ub[nxt] = 1
            nxt += 1
    for _ in range(t):
        edges.append((nxt, nxt + 1))
        ub[nxt + 1] = 0
        nxt += 2
    return build_instance(nxt, edges, ub, k + t, t if t else None)


def reduce_equitable_3col(H: Graph) -> Instance:
    """Equitable 3-colouring to housing.

    Copy ``i`` of the subdivided H occupies ids ``i*(n+m) .. (i+1)*(n+m)-1``
    (H's vertices first, then edge-guards).  Size-guards follow at
    ``3*(n+m) + i`` and vertex-guards at ``3*(n+m) + 3 + j``.
    """
    n = H.vertex_count
    if n % 3:
        raise NotDivisibleBy3(f"{n} vertices is not a multiple of 3")
    hedges = H.edges()
    m = len(hedges)
    block = n + m
    edges = []
    ub = {}
    for i in range(3):
        base = i * block
        for e, (u, v) in enumerate(hedges):
            g = base + n + e
            edges += [(base + u, g), (base + v, g)]
            ub[g] = 1
        size_guard = 3 * block + i
        ub[size_guard] = n // 3
        edges += [(size_guard, base + j) for j in range(n)]
    for j in range(n):
        guard = 3 * block + 3 + j
        ub[guard] = 1
        edges += [(guard, i * block + j) for i in range(3)]
    total = 3 * block + 3 + n
    return build_instance(total, edges, ub, n)


def decode_colouring(H: Graph, housing) -> list[int] | None:
    """Colour of each vertex of H read off a housing of the eq3col instance."""
    n = H.vertex_count
    block = n + H.edge_count
    placed = set(Housing(housing))
    colours = []
    for j in range(n):
        hits = [i for i in range(3) if i * block + j in placed]
        if len(hits) != 1:
            return None
        colours.append(hits[0])
    return colours


# -- random families -------------------------------------------------------


FAMILIES = ("tree", "cycle", "maxdeg2", "bipartite", "nearly_complete", "planted_modulator")


class Generated(NamedTuple):
    instance: Instance
    meta: dict


def _int(params, key, default=None, low=0):
    value = params.get(key, default)
    if value is None:
        raise InvalidParams(f"missing parameter {key!r}")
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"parameter {key!r} must be an integer") from None
    if value < low:
        raise InvalidParams(f"parameter {key!r} must be at least {low}")
    return value


def _prob(params, key, default):
    try:
        value = float(params.get(key, default))
    except (TypeError, ValueError):
        raise InvalidParams(f"parameter {key!r} must be a number") from None
    if not 0.0 <= value <= 1.0:
        raise InvalidParams(f"parameter {key!r} must lie in [0, 1]")
    return value


def _tree_edges(rng, vertices):
    return [(vertices[rng.randrange(i)], vertices[i]) for i in range(1, len(vertices))]


def _cycle_edges(vertices):
    k = len(vertices)
    return [(vertices[i], vertices[(i + 1) % k]) for i in range(k)]


def _finish(rng, n, edges, occupied, params, meta):
    """Draw bounds and R, then validate."""
    zero = _prob(params, "zero_prob", 0.0)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    ub = {}
    for v in sorted(occupied):
        ub[v] = 0 if rng.random() < zero else rng.randint(0, deg[v])
    free = n - len(ub)
    if "R" in params:
        R = _int(params, "R")
        if R > free:
            raise InvalidParams(f"R = {R} exceeds the {free} empty vertices")
    else:
        R = rng.randint(0, free)
    t = params.get("t")
    inst = build_instance(n, edges, ub, R, None if t is None else _int(params, "t"))
    return Generated(inst, meta)


def _occupancy(rng, n, params):
    p = _prob(params, "occupied", 0.5)
    return {v for v in range(n) if rng.random() < p}


def generate_random(family: str, params: dict | None = None, seed: int = 0) -> Generated:
    """Deterministic random instance of a structured family.

    Shared parameters: ``zero_prob`` (chance a bound is forced to 0), ``R``
    (drawn uniformly from [0, |V_U|] when omitted) and ``t``.  Per family:

    * tree, cycle, maxdeg2: ``n`` and ``occupied`` (chance a vertex is occupied)
    * bipartite: ``a`` inhabitants, ``b`` empty vertices, edge ``density``
    * nearly_complete: ``a``, ``b`` and ``p`` missing inhabitant-empty edges
    * planted_modulator: ``a``, ``b`` for the complete core, ``k`` modulator
      vertices and ``density`` of their edges
    """
    params = dict(params or {})
    rng = random.Random(seed)
    if family == "tree":
        n = _int(params, "n", low=1)
        edges = _tree_edges(rng, list(range(n)))
        return _finish(rng, n, edges, _occupancy(rng, n, params), params, {})
    if family == "cycle":
        n = _int(params, "n", low=3)
        return _finish(rng, n, _cycle_edges(list(range(n))), _occupancy(rng, n, params), params, {})
    if family == "maxdeg2":
        n = _int(params, "n", low=1)
        edges = []
        start = 0
        while start < n:
            size = rng.randint(1, n - start)
            piece = list(range(start, start + size))
            if size >= 3 and rng.random() < 0.5:
                edges += _cycle_edges(piece)
            else:
                edges += list(zip(piece, piece[1:]))
            start += size
        return _finish(rng, n, edges, _occupancy(rng, n, params), params, {})
    if family == "bipartite":
        a, b = _int(params, "a"), _int(params, "b")
        density = _prob(params, "density", 0.5)
        edges = [(h, a + v) for h in range(a) for v in range(b) if rng.random() < density]
        return _finish(rng, a + b, edges, set(range(a)), params, {})
    if family == "nearly_complete":
        a, b, p = _int(params, "a"), _int(params, "b"), _int(params, "p", 0)
        pairs = [(h, a + v) for h in range(a) for v in range(b)]
        if p > len(pairs):
            raise InvalidParams(f"cannot remove {p} of {len(pairs)} edges")
        missing = set(rng.sample(pairs, p))
        edges = [e for e in pairs if e not in missing]
        return _finish(rng, a + b, edges, set(range(a)), params, {"missing": sorted(missing)})
    if family == "planted_modulator":
        a, b, k = _int(params, "a"), _int(params, "b"), _int(params, "k", 1)
        density = _prob(params, "density", 0.5)
        edges = [(h, a + v) for h in range(a) for v in range(b)]
        modulator = list(range(a + b, a + b + k))
        occ = set(range(a))
        for x in modulator:
            if rng.random() < 0.5:
                occ.add(x)
        for x in modulator:
            for y in range(x):
                if (x in occ) != (y in occ) and rng.random() < density:
                    edges.append((y, x))
        return _finish(rng, a + b + k, edges, occ, params, {"modulator": modulator})
    raise InvalidParams(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
