"""Forest DP running time against instance size, next to a brute-force baseline."""

import timeit

from arhub import generate_random, solve_by_r_subsets, solve_forest
from arhub.errors import BudgetExceeded


def main():
    for n in (1000, 3000, 10000, 30000):
        inst, _ = generate_random("tree", {"n": n, "R": 8}, seed=n)
        t = min(timeit.repeat(lambda: solve_forest(inst), number=1, repeat=3))
        print(f"forest n={n:<6} {t * 1000:8.1f} ms  {solve_forest(inst).answer}")
    inst, _ = generate_random("tree", {"n": 1000, "R": 8}, seed=1000)
    cap = 10**6
    try:
        t = timeit.timeit(lambda: solve_by_r_subsets(inst, cap=cap), number=1)
        print(f"brute force n=1000: {t:.2f} s")
    except BudgetExceeded:
        print(f"brute force n=1000: gave up after {cap} subsets")


if __name__ == "__main__":
    main()
