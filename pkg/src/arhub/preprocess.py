"""Answer-preserving reduction rules and solution lifting.

Every rule returns the reduced instance together with a
:class:`ReductionTrace`.  Vertex ids inside a trace always refer to the
*original* instance, and ``mapping[i]`` gives the original id of reduced
vertex ``i``, so ``lift_solution`` can translate a reduced witness back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InfeasibleDetected
from .instance import Housing, Instance, restrict


class ReductionStep(NamedTuple):
    rule: str
    removed_vertices: tuple[int, ...]
    removed_inhabitants: tuple[int, ...]
    ub_adjustments: dict  # original vertex -> new bound
    removed_edges: tuple[tuple[int, int], ...] = ()


@dataclass
class ReductionTrace:
    mapping: tuple[int, ...]
    steps: list[ReductionStep] = field(default_factory=list)
    forced_placements: frozenset[int] = frozenset()
    refugee_delta: int = 0

    @classmethod
    def identity(cls, inst: Instance) -> "ReductionTrace":
        return cls(tuple(range(inst.n)))

    def then(self, later: "ReductionTrace") -> "ReductionTrace":
        """Compose with a trace recorded on the instance this one produced."""
        m = self.mapping

        def tr(vs):
            return tuple(m[v] for v in vs)

        steps = list(self.steps)
        for s in later.steps:
            steps.append(
                ReductionStep(
                    s.rule,
                    tr(s.removed_vertices),
                    tr(s.removed_inhabitants),
                    {m[v]: b for v, b in s.ub_adjustments.items()},
                    tuple((m[u], m[v]) for u, v in s.removed_edges),
                )
            )
        return ReductionTrace(
            tuple(m[v] for v in later.mapping),
            steps,
            self.forced_placements | frozenset(m[v] for v in later.forced_placements),
            self.refugee_delta + later.refugee_delta,
        )


def lift_solution(trace: ReductionTrace, reduced_housing) -> Housing:
    m = trace.mapping
    return Housing([m[v] for v in reduced_housing]) | trace.forced_placements


def replay(trace: ReductionTrace, original: Instance) -> Instance:
    """Re-apply a trace to ``original``; reproduces the reduced instance."""
    removed_edges = {frozenset(e) for s in trace.steps for e in s.removed_edges}
    graph = original.graph.without_edges(lambda u, v: frozenset((u, v)) in removed_edges)
    ub = dict(original.ub)
    for s in trace.steps:
        ub.update(s.ub_adjustments)
    base = original.replace(graph=graph, ub={v: min(ub[v], graph.degree(v)) for v in ub})
    reduced, _ = restrict(base, trace.mapping, refugees=original.refugees - trace.refugee_delta)
    return reduced


def _delete(inst: Instance, rule: str, removed: set[int], inhabitants) -> tuple[Instance, ReductionTrace]:
    keep = [v for v in range(inst.n) if v not in removed]
    reduced, old = restrict(inst, keep)
    adjustments = {
        old[i]: b for i, b in reduced.ub.items() if b != inst.ub[old[i]]
    }
    step = ReductionStep(rule, tuple(sorted(removed)), tuple(sorted(inhabitants)), adjustments)
    return reduced, ReductionTrace(old, [step] if removed or adjustments else [])


def bipartize(inst: Instance) -> Instance:
    """Drop edges joining two occupied or two empty vertices."""
    return bipartize_traced(inst)[0]


def bipartize_traced(inst: Instance) -> tuple[Instance, ReductionTrace]:
    """Also clamps each bound to the inhabitant's new degree."""
    occ = inst.ub
    same = [(u, v) for u, v in inst.graph.edges() if (u in occ) == (v in occ)]
    trace = ReductionTrace.identity(inst)
    if not same:
        return inst, trace
    graph = inst.graph.without_edges(lambda u, v: (u in occ) == (v in occ))
    ub = {h: min(b, graph.degree(h)) for h, b in occ.items()}
    lowered = {h: b for h, b in ub.items() if b != occ[h]}
    trace.steps.append(ReductionStep("bipartize", (), (), lowered, tuple(same)))
    return inst.replace(graph=graph, ub=ub), trace


def remove_intolerant(inst: Instance) -> tuple[Instance, ReductionTrace]:
    """Delete every ub=0 inhabitant with its vertex and its empty neighbours.

    Raises :class:`InfeasibleDetected` when fewer than R empty vertices remain.
    """
    trace = ReductionTrace.identity(inst)
    while True:
        intolerant = [h for h, b in inst.ub.items() if b == 0]
        if not intolerant:
            break
        removed = set(intolerant)
        for h in intolerant:
            removed.update(inst.empty_neighbours[h])
        inst, step_trace = _delete(inst, "remove_intolerant", removed, intolerant)
        trace = trace.then(step_trace)
    if len(inst.empty) < inst.refugees:
        raise InfeasibleDetected(
            f"only {len(inst.empty)} empty vertices left for {inst.refugees} refugees",
            trace,
            inst,
        )
    return inst, trace


def remove_saturated(inst: Instance) -> tuple[Instance, ReductionTrace]:
    """Delete every inhabitant whose bound is at least R (it accepts any housing)."""
    saturated = [h for h, b in inst.ub.items() if b >= inst.refugees]
    if not saturated:
        return inst, ReductionTrace.identity(inst)
    return _delete(inst, "remove_saturated", set(saturated), saturated)


def trivial_yes_check(inst: Instance) -> Housing | None:
    if not inst.ub or min(inst.ub.values()) >= inst.refugees:
        return Housing(inst.empty[: inst.refugees])
    return None


class Reduction(NamedTuple):
    instance: Instance
    trace: ReductionTrace
    infeasible: bool


def reduce_instance(inst: Instance) -> Reduction:
    """bipartize, then remove_saturated / remove_intolerant to a fixpoint.

    Only sound for the plain problem; relaxed instances are rejected.
    """
    if inst.t:
        raise ValueError("reduction rules assume t = 0")
    inst, trace = bipartize_traced(inst)
    while True:
        before = inst.n
        inst, step = remove_saturated(inst)
        trace = trace.then(step)
        try:
            inst, step = remove_intolerant(inst)
        except InfeasibleDetected as exc:
            return Reduction(exc.instance, trace.then(exc.trace), True)
        trace = trace.then(step)
        if inst.n == before:
            return Reduction(inst, trace, False)
