"""Relaxed housing: the universal excess bound and the below-bound solver."""

from __future__ import annotations

from itertools import combinations, product

from .errors import BudgetExceeded, InvalidParams
from .instance import Instance, Timer, excess, restrict
from .oracle import min_excess_brute
from .structured import solve_few_inhabitants

GUESS_CAP = 10**6


def guaranteed_bound(inst: Instance) -> int:
    """|I| * R: no inhabitant can see more than R refugees."""
    return inst.inhabitant_count * inst.refugees


def min_excess(inst: Instance) -> int:
    """Smallest total excess of any housing of size R (brute force)."""
    if len(inst.empty) < inst.refugees:
        raise InvalidParams("fewer empty vertices than refugees")
    return min_excess_brute(inst)[0]


def _eff_vectors(ranges, R, q):
    """eff vectors whose total slack sum(R - eff) reaches q."""
    for vec in product(*ranges):
        if sum(R - e for e in vec) >= q:
            yield vec


def solve_below_guarantee(inst: Instance, q: int, cap: int = GUESS_CAP):
    """Decide whether total excess |I|*R - q is reachable.

    Guesses a set S of at most q inhabitants and for each an excess value
    ``eff``; everyone outside S is dropped, bounds in S are raised by
    ``eff`` and the residue goes to the few-inhabitants solver.  Any housing
    found is re-checked against the original instance before it counts.
    """
    timer = Timer()
    if q < 1:
        raise InvalidParams("q must be at least 1")
    R = inst.refugees
    t = guaranteed_bound(inst) - q
    if t < 0 or len(inst.empty) < R:
        return timer.report(False, None, "below-guarantee", t=t, guesses=0)
    deg = inst.graph.degree
    lo_base = max(0, R - q)
    guesses = 0
    inhabitants = list(inst.ub)
    for size in range(1, min(q, len(inhabitants)) + 1):
        for S in combinations(inhabitants, size):
            # an inhabitant's excess never exceeds deg - ub, nor R - 1 here
            ranges = []
            for s in S:
                top = min(R - 1, deg(s) - inst.ub[s])
                bottom = min(lo_base, top)
                ranges.append(range(bottom, top + 1) if top >= 0 else range(0))
            keep = [v for v in range(inst.n) if v not in inst.ub or v in S]
            for vec in _eff_vectors(ranges, R, q):
                guesses += 1
                if guesses > cap:
                    raise BudgetExceeded(f"more than {cap} below-guarantee guesses")
                ub = dict(inst.ub)
                for s, e in zip(S, vec):
                    ub[s] += e
                sub, old = restrict(inst, keep, ub=ub, t=None)
                rep = solve_few_inhabitants(sub)
                if not rep.verdict:
                    continue
                housing = [old[v] for v in rep.witness]
                total = excess(inst, housing).total
                if total <= t:
                    return timer.report(
                        True, housing, "below-guarantee", t=t, guesses=guesses, excess=total
                    )
    return timer.report(False, None, "below-guarantee", t=t, guesses=guesses)
