"""Solver registry and the ``auto`` strategy.

``solve(inst, solver)`` is the single entry point used by the CLI and the
bench harness.  Every yes-answer is re-checked with :func:`is_solution`
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle, relaxed, structured, treewidth
from .errors import BudgetExceeded, PreconditionError
from .instance import Instance, SolveReport, Timer, degree_stats, is_solution
from .preprocess import lift_solution, reduce_instance, trivial_yes_check


@dataclass
class Options:
    """Knobs for ``auto`` and for solvers that need extra input."""

    decomposition: str | None = None  # PACE text for the tree-width solvers
    modulator: tuple[int, ...] | None = None
    budget_cap: int | None = None
    few_inhabitants_limit: int = 12
    fes_limit: int = 12
    cell_limit: int = 10**7


def _cap(options, default):
    return default if options.budget_cap is None else options.budget_cap


def _ntd(inst, options):
    if options.decomposition is None:
        return None
    return treewidth.nice_decomposition(inst, "external", options.decomposition)


def _plain(inst: Instance) -> Instance:
    if inst.t:
        raise PreconditionError(f"solver handles only t = 0, instance has t = {inst.t}")
    return inst.replace(t=None)


def _budget(inst: Instance) -> int:
    return inst.t or 0


def _below_guarantee(inst, options):
    q = relaxed.guaranteed_bound(inst) - _budget(inst)
    if q <= 0:
        timer = Timer()
        ok = len(inst.empty) >= inst.refugees
        return timer.report(ok, inst.empty[: inst.refugees], "guarantee", t=_budget(inst))
    return relaxed.solve_below_guarantee(inst, q, cap=_cap(options, relaxed.GUESS_CAP))


PLAIN = {
    "oracle": lambda i, o: oracle.solve_by_r_subsets(i, _cap(o, oracle.R_SUBSETS_CAP)),
    "oracle-empty-subsets": lambda i, o: oracle.solve_by_empty_subsets(i, _cap(o, oracle.EMPTY_SUBSETS_CAP)),
    "oracle-extra-houses": lambda i, o: oracle.solve_by_extra_houses(i, _cap(o, oracle.R_SUBSETS_CAP)),
    "branch-and-bound": lambda i, o: oracle.solve_branch_and_bound(i, _cap(o, oracle.R_SUBSETS_CAP)),
    "forest": lambda i, o: structured.solve_forest(i),
    "maxdeg2": lambda i, o: structured.solve_maxdeg2(i),
    "complete-bipartite": lambda i, o: structured.solve_complete_bipartite(i),
    "nearly-complete-bipartite": lambda i, o: structured.solve_nearly_complete_bipartite(i),
    "few-inhabitants": lambda i, o: structured.solve_few_inhabitants(i),
    "modulator": lambda i, o: structured.solve_modulator(i, _require_modulator(o)),
    "fes": lambda i, o: structured.solve_fes(i),
    "treewidth": lambda i, o: treewidth.solve_treewidth(
        i, _ntd(i, o), cell_cap=_cap(o, treewidth.CELL_CAP)
    ),
}

RELAXED = {
    "relaxed-brute": lambda i, o: oracle.solve_relaxed_brute(i, _budget(i), _cap(o, oracle.R_SUBSETS_CAP)),
    "treewidth-relaxed": lambda i, o: treewidth.solve_treewidth_relaxed(
        i, _ntd(i, o), _budget(i), cell_cap=_cap(o, treewidth.CELL_CAP)
    ),
    "below-guarantee": _below_guarantee,
}

SOLVERS = ("auto",) + tuple(PLAIN) + tuple(RELAXED)


def _require_modulator(options):
    if options.modulator is None:
        raise PreconditionError("the modulator solver needs --modulator")
    return options.modulator


def _auto_decomposition(inst, sub, mapping, options):
    if options.decomposition is None:
        return treewidth.nice_decomposition(sub)
    # a decomposition of the input graph restricts to the reduced one
    td = treewidth.decompose(inst.graph, "external", options.decomposition)
    new = {old: i for i, old in enumerate(mapping)}
    bags = [frozenset(new[v] for v in bag if v in new) for bag in td.bags]
    return treewidth.make_nice(treewidth.TreeDecomposition(bags, td.children, td.root), sub)


def _auto_plain(inst: Instance, options: Options):
    timer = Timer()
    red = reduce_instance(inst)
    path = ["preprocess"]
    if red.infeasible:
        return timer.report(False, None, "auto:preprocess", path=path)
    sub = red.instance
    easy = trivial_yes_check(sub)
    if easy is not None:
        return timer.report(True, lift_solution(red.trace, easy), "auto:trivial", path=path)
    stats = degree_stats(sub)
    report = None
    if stats.is_complete_bipartite_between_parts:
        report = structured.solve_complete_bipartite(sub)
    elif stats.is_forest:
        report = structured.solve_forest(sub)
    elif stats.max_degree <= 2:
        report = structured.solve_maxdeg2(sub)
    elif sub.inhabitant_count <= options.few_inhabitants_limit:
        report = structured.solve_few_inhabitants(sub)
    elif len(structured.feedback_edges(sub)) <= options.fes_limit:
        report = structured.solve_fes(sub)
    else:
        try:
            ntd = _auto_decomposition(inst, sub, red.trace.mapping, options)
            if treewidth.estimate_cells(sub, ntd) <= options.cell_limit:
                report = treewidth.solve_treewidth(sub, ntd, cell_cap=_cap(options, treewidth.CELL_CAP))
        except BudgetExceeded:
            path.append("treewidth")
        if report is None:
            report = oracle.solve_branch_and_bound(sub, _cap(options, oracle.R_SUBSETS_CAP))
    path.append(report.solver)
    witness = lift_solution(red.trace, report.witness) if report.verdict else None
    return timer.report(report.verdict, witness, "auto:" + report.solver, path=path, **report.stats)


def _auto_relaxed(inst: Instance, options: Options):
    timer = Timer()
    if relaxed.guaranteed_bound(inst) <= inst.t:
        rep = _below_guarantee(inst, options)
    else:
        rep = None
        try:
            rep = RELAXED["treewidth-relaxed"](inst, options)
        except BudgetExceeded:
            pass
        if rep is None:
            rep = RELAXED["relaxed-brute"](inst, options)
    return timer.report(rep.verdict, rep.witness, "auto:" + rep.solver, **rep.stats)


def solve(inst: Instance, solver: str = "auto", options: Options | None = None) -> SolveReport:
    options = options or Options()
    if solver == "auto":
        report = _auto_relaxed(inst, options) if inst.t else _auto_plain(inst.replace(t=None), options)
    elif solver in PLAIN:
        report = PLAIN[solver](_plain(inst), options)
    elif solver in RELAXED:
        report = RELAXED[solver](inst, options)
    else:
        raise ValueError(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}")
    if report.verdict:
        check = inst if inst.t else inst.replace(t=None)
        if report.witness is None or not is_solution(check, report.witness):
            raise AssertionError(f"{report.solver} returned an invalid witness {report.witness}")
    elif report.witness is not None:
        report.witness = None
    return report

