"""Brute-force reference solvers.

These define ground truth for the property tests, so they favour obvious
correctness over speed.  Each enumerates candidates in lexicographic order of
sorted vertex ids and returns the first valid one.  Going past the subset cap
raises :class:`BudgetExceeded`; it never degrades to a silent "no".
"""

from __future__ import annotations

from itertools import combinations

from .errors import BudgetExceeded
from .instance import Instance, Timer

R_SUBSETS_CAP = 10**8
EMPTY_SUBSETS_CAP = 2**30


def _respecting(inst: Instance, placed) -> bool:
    counts = {}
    ub = inst.ub
    occ = inst.occupied_neighbours
    for v in placed:
        for h in occ[v]:
            c = counts.get(h, 0) + 1
            if c > ub[h]:
                return False
            counts[h] = c
    return True


def _excess_total(inst: Instance, placed) -> int:
    counts = {}
    occ = inst.occupied_neighbours
    for v in placed:
        for h in occ[v]:
            counts[h] = counts.get(h, 0) + 1
    ub = inst.ub
    return sum(max(0, c - ub[h]) for h, c in counts.items())


def _over_cap(count, cap, what):
    if count > cap:
        raise BudgetExceeded(f"more than {cap} {what} enumerated")


def solve_by_r_subsets(inst: Instance, cap: int = R_SUBSETS_CAP):
    timer = Timer()
    count = 0
    for combo in combinations(inst.empty, inst.refugees):
        count += 1
        _over_cap(count, cap, "R-subsets")
        if _respecting(inst, combo):
            return timer.report(True, combo, "oracle", subsets=count)
    return timer.report(False, None, "oracle", subsets=count)


def solve_by_empty_subsets(inst: Instance, cap: int = EMPTY_SUBSETS_CAP):
    """Scan every subset of the empty vertices as a bitmask, smallest mask first."""
    timer = Timer()
    empty = inst.empty
    R = inst.refugees
    count = 0
    for mask in range(1 << len(empty)):
        count += 1
        _over_cap(count, cap, "subsets of empty vertices")
        if mask.bit_count() != R:
            continue
        placed = [v for i, v in enumerate(empty) if mask >> i & 1]
        if _respecting(inst, placed):
            return timer.report(True, placed, "oracle-empty-subsets", subsets=count)
    return timer.report(False, None, "oracle-empty-subsets", subsets=count)


def solve_by_extra_houses(inst: Instance, cap: int = R_SUBSETS_CAP):
    """Guess the xi = |V_U| - R empty vertices left unused."""
    timer = Timer()
    empty = inst.empty
    xi = len(empty) - inst.refugees
    count = 0
    for unused in combinations(empty, xi):
        count += 1
        _over_cap(count, cap, "sets of unused houses")
        skip = set(unused)
        placed = [v for v in empty if v not in skip]
        if _respecting(inst, placed):
            return timer.report(True, placed, "oracle-extra-houses", subsets=count, xi=xi)
    return timer.report(False, None, "oracle-extra-houses", subsets=count, xi=xi)


def solve_relaxed_brute(inst: Instance, t: int | None = None, cap: int = R_SUBSETS_CAP):
    """R-subset scan accepting the first housing with total excess <= t.

    On a "no" the report carries ``min_excess`` over all R-subsets.
    """
    timer = Timer()
    t = inst.t if t is None else t
    if t is None:
        raise ValueError("relaxed solver needs a budget t")
    count = 0
    best = None
    for combo in combinations(inst.empty, inst.refugees):
        count += 1
        _over_cap(count, cap, "R-subsets")
        exc = _excess_total(inst, combo)
        if exc <= t:
            return timer.report(True, combo, "relaxed-brute", subsets=count, excess=exc)
        if best is None or exc < best:
            best = exc
    return timer.report(False, None, "relaxed-brute", subsets=count, min_excess=best)


def min_excess_brute(inst: Instance, cap: int = R_SUBSETS_CAP) -> tuple[int, tuple[int, ...]]:
    """Smallest total excess over all R-subsets, with the first minimiser."""
    best, arg = None, None
    for count, combo in enumerate(combinations(inst.empty, inst.refugees), 1):
        _over_cap(count, cap, "R-subsets")
        exc = _excess_total(inst, combo)
        if best is None or exc < best:
            best, arg = exc, combo
            if exc == 0:
                break
    return best, arg


def max_housable(inst: Instance, cap: int = EMPTY_SUBSETS_CAP) -> int:
    """Largest inhabitants-respecting housing, by scanning all subsets."""
    empty = inst.empty
    _over_cap(1 << len(empty), cap, "subsets of empty vertices")
    best = 0
    for mask in range(1 << len(empty)):
        size = mask.bit_count()
        if size <= best:
            continue
        if _respecting(inst, [v for i, v in enumerate(empty) if mask >> i & 1]):
            best = size
    return best


def solve_branch_and_bound(inst: Instance, cap: int = R_SUBSETS_CAP):
    """Depth-first include/exclude search over empty vertices.

    Prunes a branch when the vertices still placeable cannot reach R.  Not a
    brute-force oracle: it is an exact fallback for instances whose R-subset
    space is too large to scan.
    """
    timer = Timer()
    R = inst.refugees
    order = list(inst.empty)
    occ = inst.occupied_neighbours
    residual = dict(inst.ub)
    chosen: list[int] = []
    nodes = 0

    def placeable(v):
        return all(residual[h] > 0 for h in occ[v])

    def search(i):
        nonlocal nodes
        nodes += 1
        _over_cap(nodes, cap, "search nodes")
        need = R - len(chosen)
        if need == 0:
            return True
        rest = order[i:]
        if len(rest) < need or sum(1 for v in rest if placeable(v)) < need:
            return False
        v = order[i]
        if placeable(v):
            for h in occ[v]:
                residual[h] -= 1
            chosen.append(v)
            if search(i + 1):
                return True
            chosen.pop()
            for h in occ[v]:
                residual[h] += 1
        return search(i + 1)

    found = search(0)
    return timer.report(found, list(chosen), "branch-and-bound", nodes=nodes)
