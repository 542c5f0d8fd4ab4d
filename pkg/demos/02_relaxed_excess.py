"""Relaxed housing: how the answer moves with the excess budget t.

For a fixed instance we sweep t, compare the tree-width DP with brute force,
and show the universal bound |I| * R above which every housing qualifies.
"""

import argparse
import random

import networkx as nx

from arhub import build_instance, guaranteed_bound, min_excess, solve


def random_instance(n, p, R, seed, zero_prob=0.3):
    """G(n, p) with about half the vertices occupied and random bounds."""
    rng = random.Random(seed)
    g = nx.gnp_random_graph(n, p, seed=seed)
    occupied = [v for v in g if rng.random() < 0.5]
    ub = {v: 0 if rng.random() < zero_prob else rng.randint(0, g.degree(v)) for v in occupied}
    return build_instance(n, list(g.edges()), ub, R)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--R", type=int, default=3)
    args = ap.parse_args()

    inst = random_instance(args.n, 0.35, args.R, args.seed, zero_prob=0.5)
    print(f"|V|={inst.n} |I|={inst.inhabitant_count} R={inst.refugees}")
    if len(inst.empty) < inst.refugees:
        print("not enough empty vertices; try another seed")
        return
    best = min_excess(inst)
    bound = guaranteed_bound(inst)
    print(f"least reachable excess {best}, universal bound {bound}")
    for t in range(0, min(bound, best + 3) + 1):
        relaxed = inst.replace(t=t)
        dp = solve(relaxed, "treewidth-relaxed")
        brute = solve(relaxed, "relaxed-brute")
        flag = "" if dp.verdict == brute.verdict else "  MISMATCH"
        print(f"t={t:<3} dp={dp.answer:<4} brute={brute.answer:<4}{flag}")


if __name__ == "__main__":
    main()
