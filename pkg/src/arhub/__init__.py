"""Exact solvers for refugee housing with inhabitant upper-bounds."""

from .dispatch import SOLVERS, Options, solve
from .errors import *  # noqa: F401,F403
from .generators import (
    decode_colouring,
    generate_random,
    reduce_equitable_3col,
    reduce_independent_set,
    reduce_relaxed_hardness,
)
from .instance import (
    Excess,
    Graph,
    Housing,
    Instance,
    RawInstance,
    SolveReport,
    build_instance,
    degree_stats,
    excess,
    is_inhabitants_respecting,
    is_solution,
    neighbour_counts,
    validate_instance,
)
from .oracle import (
    max_housable,
    min_excess_brute,
    solve_branch_and_bound,
    solve_by_empty_subsets,
    solve_by_extra_houses,
    solve_by_r_subsets,
    solve_relaxed_brute,
)
from .preprocess import (
    bipartize,
    lift_solution,
    reduce_instance,
    remove_intolerant,
    remove_saturated,
    trivial_yes_check,
)
from .relaxed import guaranteed_bound, min_excess, solve_below_guarantee
from .structured import (
    forest_max_housing,
    solve_complete_bipartite,
    solve_fes,
    solve_few_inhabitants,
    solve_forest,
    solve_maxdeg2,
    solve_modulator,
    solve_nearly_complete_bipartite,
)
from .treewidth import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decompose,
    make_nice,
    solve_treewidth,
    solve_treewidth_relaxed,
)

__version__ = "0.1.0"
