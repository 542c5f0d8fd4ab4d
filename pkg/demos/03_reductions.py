"""Hardness reductions as instance generators.

Builds the independent-set and equitable 3-colouring instances for a small
graph, solves them, and maps the housing back to a certificate.
"""

import networkx as nx

from arhub import Graph, decode_colouring, reduce_equitable_3col, reduce_independent_set, solve


def main():
    g = nx.cycle_graph(6)
    H = Graph.from_edges(6, list(g.edges()))
    for k in range(1, 5):
        inst = reduce_independent_set(H, k)
        rep = solve(inst)
        print(f"C6, k={k}: {inst.n} vertices, {rep.answer}")

    inst = reduce_equitable_3col(H)
    rep = solve(inst, "branch-and-bound")
    print(f"equitable 3-colouring of C6: {inst.n} vertices, {rep.answer}")
    if rep.verdict:
        print("colours:", decode_colouring(H, rep.witness))


if __name__ == "__main__":
    main()
