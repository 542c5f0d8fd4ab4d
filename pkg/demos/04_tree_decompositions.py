"""Tree decompositions: heuristic versus exact width, and the DP table size.

Prints both widths and the number of table cells the DP touched, with
and without the empty-neighbour pruning.
"""

import argparse
import random

import networkx as nx

from arhub import build_instance
from arhub.treewidth import decompose, nice_decomposition, solve_treewidth


def random_instance(n, p, R, seed, zero_prob=0.3):
    """G(n, p) with about half the vertices occupied and random bounds."""
    rng = random.Random(seed)
    g = nx.gnp_random_graph(n, p, seed=seed)
    occupied = [v for v in g if rng.random() < 0.5]
    ub = {v: 0 if rng.random() < zero_prob else rng.randint(0, g.degree(v)) for v in occupied}
    return build_instance(n, list(g.edges()), ub, R)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--n", type=int, default=14)
    args = ap.parse_args()
    print(f"{'seed':>4} {'heur':>4} {'exact':>5} {'answer':>6} {'cells':>8} {'unpruned':>9}")
    for seed in range(args.seeds):
        inst = random_instance(args.n, 0.25, 3, seed)
        heur = decompose(inst.graph, "heuristic").width
        exact = decompose(inst.graph, "exact-small").width
        ntd = nice_decomposition(inst)
        pruned = solve_treewidth(inst, ntd, prune=True)
        plain = solve_treewidth(inst, ntd, prune=False)
        assert pruned.verdict == plain.verdict
        print(f"{seed:>4} {heur:>4} {exact:>5} {pruned.answer:>6} {pruned.stats['cells']:>8} {plain.stats['cells']:>9}")


if __name__ == "__main__":
    main()
