"""Tree decompositions and the signature dynamic programme over them.

A signature at node ``x`` is ``(A, P, F, rho)``:

* ``A``   bitmask of bag empty vertices that house a refugee,
* ``P``   per bag inhabitant, housed neighbours already forgotten below ``x``,
* ``F``   per bag inhabitant, housed neighbours still to be seen above ``x``,
* ``rho`` refugees housed in the subtree of ``x``.

``P`` and ``F`` are tuples aligned with the sorted occupied vertices of the
bag.  Tables are sparse: they hold exactly the signatures that are true, and
are generated forward from the children's tables.  The relaxed programme adds
``tau`` (exact excess each bag inhabitant will end with) and ``spent``
(excess charged to inhabitants already forgotten).
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from .errors import BudgetExceeded, InvalidDecomposition, InvalidParams
from .instance import Graph, Instance, Timer
from .preprocess import bipartize

CELL_CAP = 10**7
EXACT_LIMIT = 20


# -- plain tree decompositions ---------------------------------------------


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    children: list[list[int]]
    root: int = 0

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(x, c) for x, cs in enumerate(self.children) for c in cs]


def _parents(children: list[list[int]], root: int) -> list[int] | None:
    parent = [-2] * len(children)
    parent[root] = -1
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for c in children[x]:
            if parent[c] != -2:
                return None
            parent[c] = x
            queue.append(c)
    if any(p == -2 for p in parent):
        return None
    return parent


def validate_decomposition(graph: Graph, td: TreeDecomposition) -> None:
    """Raise :class:`InvalidDecomposition` unless ``td`` is a tree decomposition of ``graph``."""
    if not td.bags:
        raise InvalidDecomposition("decomposition has no nodes")
    parent = _parents(td.children, td.root)
    if parent is None:
        raise InvalidDecomposition("decomposition nodes do not form a rooted tree")
    n = graph.vertex_count
    heads = [0] * n
    covered = [False] * n
    for x, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < n:
                raise InvalidDecomposition(f"bag {x} names unknown vertex {v}")
            covered[v] = True
            p = parent[x]
            if p < 0 or v not in td.bags[p]:
                heads[v] += 1
    missing = [v for v in range(n) if not covered[v]]
    if missing:
        raise InvalidDecomposition(f"vertices {missing} appear in no bag")
    split = [v for v in range(n) if heads[v] > 1]
    if split:
        raise InvalidDecomposition(f"bags holding vertex {split[0]} are not connected")
    holder: dict[int, list[int]] = {}
    for x, bag in enumerate(td.bags):
        for v in bag:
            holder.setdefault(v, []).append(x)
    for u, v in graph.edges():
        if not any(u in td.bags[x] for x in holder[v]):
            raise InvalidDecomposition(f"edge {u}-{v} lies in no bag")


def _rooted(bags: list[frozenset[int]], edges: Iterable[tuple[int, int]], root: int = 0) -> TreeDecomposition:
    """Root an undirected tree (or forest; extra components hang off ``root``)."""
    adj: list[list[int]] = [[] for _ in bags]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    children: list[list[int]] = [[] for _ in bags]
    seen = [False] * len(bags)
    for start in [root] + list(range(len(bags))):
        if seen[start]:
            continue
        if start != root:
            children[root].append(start)
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if not seen[y]:
                    seen[y] = True
                    children[x].append(y)
                    queue.append(y)
    return TreeDecomposition(list(bags), children, root)


def from_elimination_ordering(graph: Graph, order: list[int]) -> TreeDecomposition:
    n = graph.vertex_count
    if n == 0:
        return TreeDecomposition([frozenset()], [[]], 0)
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(a) for a in graph.adjacency]
    bags = [frozenset()] * n
    edges = []
    for v in order:
        nbrs = adj[v]
        bags[pos[v]] = frozenset(nbrs | {v})
        for u in nbrs:
            adj[u] |= nbrs
            adj[u].discard(u)
            adj[u].discard(v)
        if nbrs:
            nxt = min(nbrs, key=pos.__getitem__)
            edges.append((pos[v], pos[nxt]))
        adj[v] = set()
    return _rooted(bags, edges, root=n - 1)


def _min_fill(graph: Graph) -> TreeDecomposition:
    G = nx.Graph()
    G.add_nodes_from(range(graph.vertex_count))
    G.add_edges_from(graph.edges())
    if graph.vertex_count == 0:
        return TreeDecomposition([frozenset()], [[]], 0)
    _, T = nx.algorithms.approximation.treewidth_min_fill_in(G)
    nodes = sorted(T.nodes, key=lambda b: (len(b), sorted(b)), reverse=True)
    index = {b: i for i, b in enumerate(nodes)}
    return _rooted([frozenset(b) for b in nodes], [(index[a], index[b]) for a, b in T.edges])


def _degeneracy(adj: dict[int, set[int]]) -> int:
    deg = {v: len(a) for v, a in adj.items()}
    alive = set(adj)
    best = 0
    while alive:
        v = min(alive, key=deg.__getitem__)
        best = max(best, deg[v])
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return best


def _eliminate(adj: dict[int, set[int]], v: int) -> dict[int, set[int]]:
    nbrs = adj[v]
    out = {}
    for u, a in adj.items():
        if u == v:
            continue
        if u in nbrs:
            out[u] = (a | nbrs) - {u, v}
        else:
            out[u] = set(a)
    return out


def _exact_ordering(graph: Graph, upper: int) -> list[int] | None:
    """Branch and bound over elimination orderings; None if none beats ``upper``."""
    best = [upper, None]
    seen: dict[frozenset[int], int] = {}

    def dfs(adj, order, width):
        if width >= best[0]:
            return
        if len(adj) - 1 <= width:
            best[0], best[1] = width, order + sorted(adj)
            return
        low = max(width, _degeneracy(adj))
        if low >= best[0]:
            return
        key = frozenset(adj)
        if seen.get(key, best[0] + 1) <= width:
            return
        seen[key] = width
        cands = sorted(adj, key=lambda v: (len(adj[v]), v))
        for v in cands:
            a = adj[v]
            if len(a) <= low and all(y in adj[x] for x in a for y in a if x < y):
                cands = [v]
                break
        for v in cands:
            dfs(_eliminate(adj, v), order + [v], max(width, len(adj[v])))

    dfs({v: set(a) for v, a in enumerate(graph.adjacency)}, [], -1 if graph.vertex_count == 0 else 0)
    return best[1]


def decompose(graph: Graph, mode: str = "heuristic", source: str | None = None) -> TreeDecomposition:
    """Tree decomposition of ``graph``.

    ``mode`` is ``heuristic`` (min-fill), ``exact-small`` (optimal width,
    at most 20 vertices) or ``external`` (``source`` is PACE ``.td`` text).
    """
    if mode == "heuristic":
        td = _min_fill(graph)
    elif mode == "exact-small":
        if graph.vertex_count > EXACT_LIMIT:
            raise InvalidParams(f"exact decomposition is limited to {EXACT_LIMIT} vertices")
        td = _min_fill(graph)
        order = _exact_ordering(graph, td.width)
        if order is not None:
            td = from_elimination_ordering(graph, order)
    elif mode == "external":
        if source is None:
            raise InvalidParams("external mode needs decomposition text")
        td = parse_pace(source)
    else:
        raise InvalidParams(f"unknown decomposition mode {mode!r}")
    validate_decomposition(graph, td)
    return td


def parse_pace(text: str) -> TreeDecomposition:
    """Read PACE ``.td`` text (1-based bag and vertex ids); first bag is the root."""
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if len(parts) != 5 or parts[1] != "td" or header is not None:
                    raise InvalidDecomposition(f"line {lineno}: bad solution line")
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise InvalidDecomposition(f"line {lineno}: bag before solution line")
                bid = int(parts[1])
                if bid in bags or not 1 <= bid <= header[0]:
                    raise InvalidDecomposition(f"line {lineno}: bad bag id {bid}")
                vs = [int(x) - 1 for x in parts[2:]]
                if any(not 0 <= v < header[2] for v in vs):
                    raise InvalidDecomposition(f"line {lineno}: vertex out of range")
                bags[bid] = frozenset(vs)
            else:
                if header is None or len(parts) != 2:
                    raise InvalidDecomposition(f"line {lineno}: bad tree edge")
                edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError as exc:
            raise InvalidDecomposition(f"line {lineno}: {exc}") from None
    if header is None:
        raise InvalidDecomposition("missing 's td' line")
    nbags, size, _ = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise InvalidDecomposition("bag ids are not 1..#bags")
    if max((len(b) for b in bags.values()), default=0) > size:
        raise InvalidDecomposition("a bag is larger than the declared width + 1")
    if len(edges) != nbags - 1 or any(not (0 <= a < nbags and 0 <= b < nbags) for a, b in edges):
        raise InvalidDecomposition("tree edges do not form a tree on the bags")
    td = _rooted([bags[i + 1] for i in range(nbags)], edges, root=0)
    if _parents(td.children, 0) is None or sum(len(c) for c in td.children) != nbags - 1:
        raise InvalidDecomposition("tree edges do not form a tree on the bags")
    # forests get glued under the root by _rooted; a PACE file must already be a tree
    adj = {i: set() for i in range(nbags)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, queue = {0}, deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x] - seen:
            seen.add(y)
            queue.append(y)
    if len(seen) != nbags:
        raise InvalidDecomposition("tree edges do not form a tree on the bags")
    return td


def write_pace(td: TreeDecomposition, vertex_count: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {vertex_count}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    for a, b in td.tree_edges():
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


# -- nice tree decompositions ----------------------------------------------


class NodeKind(enum.Enum):
    LEAF = "leaf"
    INTRODUCE_EMPTY = "introduce-empty"
    INTRODUCE_OCCUPIED = "introduce-occupied"
    FORGET_EMPTY = "forget-empty"
    FORGET_OCCUPIED = "forget-occupied"
    JOIN = "join"


INTRODUCES = (NodeKind.INTRODUCE_EMPTY, NodeKind.INTRODUCE_OCCUPIED)
FORGETS = (NodeKind.FORGET_EMPTY, NodeKind.FORGET_OCCUPIED)


@dataclass
class NiceTreeDecomposition:
    """Nodes are stored children-first, so index order is a valid bottom-up order."""

    kinds: list[NodeKind]
    vertices: list[int | None]
    bags: list[frozenset[int]]
    children: list[tuple[int, ...]]
    root: int

    def __len__(self):
        return len(self.kinds)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def as_decomposition(self) -> TreeDecomposition:
        return TreeDecomposition(list(self.bags), [list(c) for c in self.children], self.root)


class _NiceBuilder:
    def __init__(self, occupied):
        self.occupied = occupied
        self.kinds, self.vertices, self.bags, self.children = [], [], [], []

    def add(self, kind, vertex, bag, children):
        self.kinds.append(kind)
        self.vertices.append(vertex)
        self.bags.append(frozenset(bag))
        self.children.append(tuple(children))
        return len(self.kinds) - 1

    def morph(self, top: int, target: frozenset[int]) -> int:
        bag = self.bags[top]
        for v in sorted(bag - target):
            kind = NodeKind.FORGET_OCCUPIED if v in self.occupied else NodeKind.FORGET_EMPTY
            bag = bag - {v}
            top = self.add(kind, v, bag, [top])
        for v in sorted(target - bag):
            kind = NodeKind.INTRODUCE_OCCUPIED if v in self.occupied else NodeKind.INTRODUCE_EMPTY
            bag = bag | {v}
            top = self.add(kind, v, bag, [top])
        return top


def make_nice(td: TreeDecomposition, inst: Instance) -> NiceTreeDecomposition:
    """Standard conversion; the root gets an empty bag via trailing forgets."""
    b = _NiceBuilder(inst.ub)
    order = []
    stack = [td.root]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(td.children[x])
    top: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        tops = [b.morph(top[c], bag) for c in td.children[x]]
        if not tops:
            tops = [b.morph(b.add(NodeKind.LEAF, None, (), ()), bag)]
        while len(tops) > 1:
            merged = [
                b.add(NodeKind.JOIN, None, bag, tops[i : i + 2]) if i + 1 < len(tops) else tops[i]
                for i in range(0, len(tops), 2)
            ]
            tops = merged
        top[x] = tops[0]
    root = b.morph(top[td.root], frozenset())
    return NiceTreeDecomposition(b.kinds, b.vertices, b.bags, b.children, root)


def validate_nice(ntd: NiceTreeDecomposition, inst: Instance) -> None:
    validate_decomposition(inst.graph, ntd.as_decomposition())
    if ntd.bags[ntd.root]:
        raise InvalidDecomposition("root bag is not empty")
    for x, kind in enumerate(ntd.kinds):
        bag, ch, v = ntd.bags[x], ntd.children[x], ntd.vertices[x]
        if any(c >= x for c in ch):
            raise InvalidDecomposition(f"node {x} precedes one of its children")
        if kind is NodeKind.LEAF:
            ok = not ch and not bag
        elif kind is NodeKind.JOIN:
            ok = len(ch) == 2 and ntd.bags[ch[0]] == bag == ntd.bags[ch[1]]
        elif kind in INTRODUCES:
            ok = len(ch) == 1 and v in bag and ntd.bags[ch[0]] == bag - {v}
            ok = ok and (v in inst.ub) == (kind is NodeKind.INTRODUCE_OCCUPIED)
        else:
            ok = len(ch) == 1 and v not in bag and ntd.bags[ch[0]] == bag | {v}
            ok = ok and (v in inst.ub) == (kind is NodeKind.FORGET_OCCUPIED)
        if not ok:
            raise InvalidDecomposition(f"node {x} violates the {kind.value} shape")


def nice_decomposition(inst: Instance, mode: str = "heuristic", source: str | None = None) -> NiceTreeDecomposition:
    return make_nice(decompose(inst.graph, mode, source), inst)


# -- the dynamic programme -------------------------------------------------


class _Context:
    """Per-instance lookups shared by the plain and relaxed programmes."""

    def __init__(self, inst: Instance, ntd: NiceTreeDecomposition, prune: bool):
        self.inst = inst
        self.ntd = ntd
        self.R = inst.refugees
        self.ub = inst.ub
        self.nmask = [0] * inst.n
        self.empty_nmask = [0] * inst.n
        for v in range(inst.n):
            for u in inst.graph.neighbours(v):
                self.nmask[v] |= 1 << u
                if u not in inst.ub:
                    self.empty_nmask[v] |= 1 << u
        self.occ = [tuple(sorted(w for w in bag if w in inst.ub)) for bag in ntd.bags]
        # subtree vertex sets, only needed for the future-count bound
        self.below = [0] * len(ntd)
        if prune:
            for x in range(len(ntd)):
                m = 0
                for v in ntd.bags[x]:
                    m |= 1 << v
                for c in ntd.children[x]:
                    m |= self.below[c]
                self.below[x] = m
        self.prune = prune
        for x, kind in enumerate(ntd.kinds):
            v = ntd.vertices[x]
            if kind in (NodeKind.INTRODUCE_OCCUPIED, NodeKind.FORGET_OCCUPIED) and v not in inst.ub:
                raise InvalidDecomposition(f"node {x} treats empty vertex {v} as occupied")
            if kind in (NodeKind.INTRODUCE_EMPTY, NodeKind.FORGET_EMPTY) and v in inst.ub:
                raise InvalidDecomposition(f"node {x} treats occupied vertex {v} as empty")

    def future_cap(self, v: int, x: int) -> int:
        if not self.prune:
            return self.ub[v]
        return (self.empty_nmask[v] & ~self.below[x]).bit_count()

    def nbr_positions(self, v: int, occ: tuple[int, ...]) -> list[int]:
        m = self.nmask[v]
        return [i for i, w in enumerate(occ) if m >> w & 1]


def _check_cap(total, cap):
    if total > cap:
        raise BudgetExceeded(f"dynamic-programming tables exceed {cap} cells")


def fill_tables(inst: Instance, ntd: NiceTreeDecomposition, *, prune: bool = True, cell_cap: int = CELL_CAP):
    """All true signatures per node, each mapped to its back-pointer."""
    ctx = _Context(inst, ntd, prune)
    R, ub = ctx.R, ctx.ub
    tables: list[dict] = []
    total = 0
    for x, kind in enumerate(ntd.kinds):
        ch = ntd.children[x]
        v = ntd.vertices[x]
        out: dict = {}
        if kind is NodeKind.LEAF:
            out[(0, (), (), 0)] = None
        elif kind is NodeKind.INTRODUCE_EMPTY:
            bit = 1 << v
            pos = ctx.nbr_positions(v, ctx.occ[x])
            for sig in tables[ch[0]]:
                A, P, F, rho = sig
                out.setdefault(sig, sig)
                if rho < R and all(F[i] > 0 for i in pos):
                    F2 = list(F)
                    for i in pos:
                        F2[i] -= 1
                    out.setdefault((A | bit, P, tuple(F2), rho + 1), sig)
        elif kind is NodeKind.INTRODUCE_OCCUPIED:
            p = bisect_left(ctx.occ[x], v)
            nm = ctx.nmask[v]
            cap = ctx.future_cap(v, x)
            for sig in tables[ch[0]]:
                A, P, F, rho = sig
                room = ub[v] - (A & nm).bit_count()
                P2 = P[:p] + (0,) + P[p:]
                for f in range(min(room, cap) + 1):
                    out.setdefault((A, P2, F[:p] + (f,) + F[p:], rho), sig)
        elif kind is NodeKind.FORGET_EMPTY:
            bit = 1 << v
            pos = ctx.nbr_positions(v, ctx.occ[x])
            for sig in tables[ch[0]]:
                A, P, F, rho = sig
                if A & bit:
                    P2 = list(P)
                    for i in pos:
                        P2[i] += 1
                    out.setdefault((A & ~bit, tuple(P2), F, rho), sig)
                else:
                    out.setdefault(sig, sig)
        elif kind is NodeKind.FORGET_OCCUPIED:
            p = bisect_left(ctx.occ[ch[0]], v)
            for sig in tables[ch[0]]:
                A, P, F, rho = sig
                if F[p] == 0:
                    out.setdefault((A, P[:p] + P[p + 1 :], F[:p] + F[p + 1 :], rho), sig)
        else:
            out = _join(tables[ch[0]], tables[ch[1]], R)
        total += len(out)
        _check_cap(total, cell_cap)
        tables.append(out)
    return tables


def _join(left: dict, right: dict, R: int) -> dict:
    groups: dict = {}
    for sig in right:
        A, P, F, rho = sig
        key = (A, tuple(p + f for p, f in zip(P, F)))
        groups.setdefault(key, []).append(sig)
    out: dict = {}
    for sy in left:
        A, Py, Fy, ry = sy
        key = (A, tuple(p + f for p, f in zip(Py, Fy)))
        size = A.bit_count()
        for sz in groups.get(key, ()):
            _, Pz, _, rz = sz
            rho = ry + rz - size
            if rho > R:
                continue
            F = tuple(f - p for f, p in zip(Fy, Pz))
            if any(f < 0 for f in F):
                continue
            P = tuple(a + b for a, b in zip(Py, Pz))
            out.setdefault((A, P, F, rho), (sy, sz))
    return out


def _trace_witness(ntd: NiceTreeDecomposition, tables, root_sig) -> list[int]:
    placed = 0
    stack = [(ntd.root, root_sig)]
    while stack:
        x, sig = stack.pop()
        placed |= sig[0]
        back = tables[x][sig]
        ch = ntd.children[x]
        if len(ch) == 1:
            stack.append((ch[0], back))
        elif len(ch) == 2:
            stack.append((ch[0], back[0]))
            stack.append((ch[1], back[1]))
    return [v for v in range(placed.bit_length()) if placed >> v & 1]


def estimate_cells(inst: Instance, ntd: NiceTreeDecomposition) -> int:
    """Crude upper bound on the number of signatures over all nodes."""
    total = 0
    R = inst.refugees
    for bag in ntd.bags:
        cells = R + 1
        for v in bag:
            if v in inst.ub:
                b = min(inst.ub[v], inst.graph.degree(v))
                cells *= (b + 1) * (b + 2) // 2
            else:
                cells *= 2
        total += cells
    return total


def _prepare(inst, ntd, mode):
    inst = bipartize(inst)
    if ntd is None:
        ntd = nice_decomposition(inst, mode)
    return inst, ntd


def solve_treewidth(
    inst: Instance,
    ntd: NiceTreeDecomposition | None = None,
    *,
    mode: str = "heuristic",
    prune: bool = True,
    cell_cap: int = CELL_CAP,
):
    """Signature DP; ``ntd`` must be a nice decomposition of the topology typed for ``inst``."""
    timer = Timer()
    inst, ntd = _prepare(inst, ntd, mode)
    tables = fill_tables(inst, ntd, prune=prune, cell_cap=cell_cap)
    root_sig = (0, (), (), inst.refugees)
    ok = root_sig in tables[ntd.root]
    witness = _trace_witness(ntd, tables, root_sig) if ok else None
    return timer.report(
        ok, witness, "treewidth", width=ntd.width, nodes=len(ntd), cells=sum(map(len, tables))
    )


# -- relaxed programme -----------------------------------------------------


def fill_relaxed_tables(
    inst: Instance, ntd: NiceTreeDecomposition, t: int, *, prune: bool = True, cell_cap: int = CELL_CAP
):
    """Signatures ``(A, P, F, tau, spent, rho)``; compatibility uses ``ub + tau``."""
    ctx = _Context(inst, ntd, prune)
    R, ub = ctx.R, ctx.ub
    deg = inst.graph.degree
    tables: list[dict] = []
    total = 0
    for x, kind in enumerate(ntd.kinds):
        ch = ntd.children[x]
        v = ntd.vertices[x]
        out: dict = {}
        if kind is NodeKind.LEAF:
            out[(0, (), (), (), 0, 0)] = None
        elif kind is NodeKind.INTRODUCE_EMPTY:
            bit = 1 << v
            pos = ctx.nbr_positions(v, ctx.occ[x])
            for sig in tables[ch[0]]:
                A, P, F, tau, spent, rho = sig
                out.setdefault(sig, sig)
                if rho < R and all(F[i] > 0 for i in pos):
                    F2 = list(F)
                    for i in pos:
                        F2[i] -= 1
                    out.setdefault((A | bit, P, tuple(F2), tau, spent, rho + 1), sig)
        elif kind is NodeKind.INTRODUCE_OCCUPIED:
            p = bisect_left(ctx.occ[x], v)
            nm = ctx.nmask[v]
            cap = ctx.future_cap(v, x)
            for sig in tables[ch[0]]:
                A, P, F, tau, spent, rho = sig
                budget = min(t - spent - sum(tau), deg(v) - ub[v])
                seen_now = (A & nm).bit_count()
                P2 = P[:p] + (0,) + P[p:]
                for tv in range(budget + 1):
                    room = ub[v] + tv - seen_now
                    if not ctx.prune:
                        fmax = room
                    else:
                        fmax = min(room, cap)
                    tau2 = tau[:p] + (tv,) + tau[p:]
                    for f in range(fmax + 1):
                        out.setdefault((A, P2, F[:p] + (f,) + F[p:], tau2, spent, rho), sig)
        elif kind is NodeKind.FORGET_EMPTY:
            bit = 1 << v
            pos = ctx.nbr_positions(v, ctx.occ[x])
            for sig in tables[ch[0]]:
                A, P, F, tau, spent, rho = sig
                if A & bit:
                    P2 = list(P)
                    for i in pos:
                        P2[i] += 1
                    out.setdefault((A & ~bit, tuple(P2), F, tau, spent, rho), sig)
                else:
                    out.setdefault(sig, sig)
        elif kind is NodeKind.FORGET_OCCUPIED:
            p = bisect_left(ctx.occ[ch[0]], v)
            nm = ctx.nmask[v]
            for sig in tables[ch[0]]:
                A, P, F, tau, spent, rho = sig
                if F[p]:
                    continue
                realized = max(0, P[p] + (A & nm).bit_count() - ub[v])
                if realized != tau[p]:
                    continue
                out.setdefault(
                    (A, P[:p] + P[p + 1 :], F[:p] + F[p + 1 :], tau[:p] + tau[p + 1 :], spent + realized, rho),
                    sig,
                )
        else:
            out = _join_relaxed(tables[ch[0]], tables[ch[1]], R, t)
        total += len(out)
        _check_cap(total, cell_cap)
        tables.append(out)
    return tables


def _join_relaxed(left: dict, right: dict, R: int, t: int) -> dict:
    groups: dict = {}
    for sig in right:
        A, P, F, tau, _, _ = sig
        key = (A, tuple(p + f for p, f in zip(P, F)), tau)
        groups.setdefault(key, []).append(sig)
    out: dict = {}
    for sy in left:
        A, Py, Fy, tau, sp_y, ry = sy
        key = (A, tuple(p + f for p, f in zip(Py, Fy)), tau)
        size = A.bit_count()
        open_tau = sum(tau)
        for sz in groups.get(key, ()):
            _, Pz, _, _, sp_z, rz = sz
            rho = ry + rz - size
            spent = sp_y + sp_z
            if rho > R or spent + open_tau > t:
                continue
            F = tuple(f - p for f, p in zip(Fy, Pz))
            if any(f < 0 for f in F):
                continue
            P = tuple(a + b for a, b in zip(Py, Pz))
            out.setdefault((A, P, F, tau, spent, rho), (sy, sz))
    return out


def solve_treewidth_relaxed(
    inst: Instance,
    ntd: NiceTreeDecomposition | None = None,
    t: int | None = None,
    *,
    mode: str = "heuristic",
    prune: bool = True,
    cell_cap: int = CELL_CAP,
):
    timer = Timer()
    t = inst.t if t is None else t
    if t is None:
        raise ValueError("relaxed solver needs a budget t")
    inst, ntd = _prepare(inst, ntd, mode)
    tables = fill_relaxed_tables(inst, ntd, t, prune=prune, cell_cap=cell_cap)
    R = inst.refugees
    hits = sorted(s for s in tables[ntd.root] if s[5] == R and s[4] <= t)
    ok = bool(hits)
    witness = _trace_witness(ntd, tables, hits[0]) if ok else None
    stats = dict(width=ntd.width, nodes=len(ntd), cells=sum(map(len, tables)))
    if ok:
        stats["excess"] = hits[0][4]
    return timer.report(ok, witness, "treewidth-relaxed", **stats)
