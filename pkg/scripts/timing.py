"""Wall time of the cycle solver at (a, b) = (5, 2) for doubling n."""

import argparse
import random
import time

from freechoose.cyclesolver import CycleInstance, solve_free_cycle
from freechoose.generators import random_anchor, random_lists


def best_of(ci, repeats):
    best, rep = float("inf"), None
    for _ in range(repeats):
        t0 = time.perf_counter()
        rep = solve_free_cycle(ci)
        best = min(best, time.perf_counter() - t0)
    return best, rep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=25_000)
    ap.add_argument("--doublings", type=int, default=4)
    ap.add_argument("--a", type=int, default=5)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'n':>9}  {'seconds':>8}  {'ratio':>5}  {'repairs':>7}  solver")
    prev = None
    for k in range(args.doublings + 1):
        n = args.start << k
        rng = random.Random(n)
        lists = random_lists(rng, n, args.a)
        anc = random_anchor(rng, lists, args.b)
        t, rep = best_of(CycleInstance(lists, args.b, anc.vertex, anc.colors), args.repeats)
        ratio = f"{t / prev:5.2f}" if prev else "    -"
        print(f"{n:>9}  {t:8.3f}  {ratio}  {rep.repairs:>7}  {rep.solver}")
        prev = t


if __name__ == "__main__":
    main()
