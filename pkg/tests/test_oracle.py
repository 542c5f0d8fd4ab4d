import random

import pytest

from arhub import (
    build_instance,
    is_solution,
    max_housable,
    min_excess_brute,
    solve_branch_and_bound,
    solve_by_empty_subsets,
    solve_by_extra_houses,
    solve_by_r_subsets,
    solve_relaxed_brute,
)
from arhub.errors import BudgetExceeded

from conftest import X, Z, W, small_corpus

ORACLES = [solve_by_r_subsets, solve_by_empty_subsets, solve_by_extra_houses, solve_branch_and_bound]


def test_triad_first_witness(triad):
    rep = solve_by_r_subsets(triad)
    assert rep.verdict and list(rep.witness) == [X, Z]
    assert rep.solver == "oracle"


def test_triad_oracles_find_same_witness(triad):
    # all scans are lexicographic, and {x, z} is the only solution
    assert {tuple(o(triad).witness) for o in ORACLES} == {(X, Z)}


@pytest.mark.parametrize("oracle", ORACLES)
def test_non_existence(oracle, star, k23):
    assert not oracle(star).verdict
    assert not oracle(k23).verdict


def test_oracles_agree_on_corpus():
    for inst in small_corpus(seed=5, per_graph=2):
        verdicts = {o(inst).verdict for o in ORACLES}
        assert len(verdicts) == 1, inst
        rep = solve_by_r_subsets(inst)
        if rep.verdict:
            assert is_solution(inst, rep.witness)


def test_max_housable_values(triad, triad_relaxed):
    assert max_housable(triad) == 2
    # h2 neighbours every empty vertex of triad_relaxed and tolerates one refugee
    assert max_housable(triad_relaxed) == 1


def test_min_excess_triad_relaxed(triad_relaxed):
    best, arg = min_excess_brute(triad_relaxed)
    assert best == 2 and arg == (X, Z, W)


def test_relaxed_brute_triad_relaxed(triad_relaxed):
    assert solve_relaxed_brute(triad_relaxed).verdict
    rep = solve_relaxed_brute(triad_relaxed, t=1)
    assert not rep.verdict and rep.stats["min_excess"] == 2


def test_relaxed_brute_t0_matches_plain():
    for inst in small_corpus(seed=6, per_graph=2):
        assert solve_relaxed_brute(inst, t=0).verdict == solve_by_r_subsets(inst).verdict


def test_relaxed_brute_full_budget_is_yes():
    rng = random.Random(2)
    for inst in small_corpus(seed=7, per_graph=1):
        t = inst.inhabitant_count * inst.refugees
        assert solve_relaxed_brute(inst, t=t).verdict
        if t and rng.random() < 0.5:
            assert solve_relaxed_brute(inst, t=t + 1).verdict


def test_subset_cap_raises():
    inst = build_instance(12, [(0, v) for v in range(1, 12)], {0: 0}, 5)
    with pytest.raises(BudgetExceeded):
        solve_by_r_subsets(inst, cap=10)
    with pytest.raises(BudgetExceeded):
        solve_by_empty_subsets(inst, cap=10)
    with pytest.raises(BudgetExceeded):
        max_housable(inst, cap=10)


def test_r_zero_is_yes(triad):
    rep = solve_by_r_subsets(triad.replace(refugees=0))
    assert rep.verdict and len(rep.witness) == 0
