"""Walk through a six-vertex instance: solve it, inspect the witness, try each solver.

Three inhabitants sit on vertices 0, 1, 2; vertices 3, 4, 5 are empty and two
refugees need a home.  Vertex 4 neighbours every inhabitant, so any housing
that uses it pushes someone over their bound.
"""

from arhub import build_instance, excess, is_solution, neighbour_counts, solve
from arhub.dispatch import PLAIN, Options
from arhub.errors import PreconditionError

EDGES = [(0, 4), (4, 2), (1, 4), (0, 3), (3, 1), (1, 5), (5, 2)]


def main():
    inst = build_instance(6, EDGES, {0: 1, 1: 2, 2: 1}, 2)
    rep = solve(inst)
    print(f"auto: {rep.answer} via {rep.solver}, witness {rep.witness}")
    print("neighbour counts:", neighbour_counts(inst, rep.witness))

    bad = [3, 4]
    print(f"housing {bad}: respecting={is_solution(inst, bad)}, excess={excess(inst, bad).total}")

    for name in PLAIN:
        try:
            r = solve(inst, name, Options(modulator=(3, 4, 5)))
        except PreconditionError as exc:
            print(f"  {name:<26} skipped ({exc})")
            continue
        print(f"  {name:<26} {r.answer:<4} {r.witness}")


if __name__ == "__main__":
    main()
