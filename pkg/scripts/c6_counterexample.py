"""Rebuild the C_6 counterexample list (p=3, a=9, b=4) and show it has no
coloring with c(v0) = {1,2,3,4}, while every larger ratio on C_6 is fine."""

import random
import time

from freechoose.core import Anchor, Cycle, Instance, fchr_cycle, fmt_ratio
from freechoose.cyclesolver import CycleInstance, counterexample_list, solve_free_cycle
from freechoose.generators import random_anchor, random_lists
from freechoose.oracle import feasible, free_check_list


def show(lists):
    for i, L in enumerate(lists):
        xs = sorted(L)
        runs, start = [], xs[0]
        for prev, x in zip(xs, xs[1:] + [None]):
            if x != prev + 1:
                runs.append(f"{start}..{prev}" if start != prev else str(start))
                start = x
        print(f"  v{i}: {{{', '.join(runs)}}}")


def main():
    lists = counterexample_list(3, 9, 4)
    print("list assignment (a=9, b=4):")
    show(lists)

    inst = Instance(Cycle(6), lists, 4, Anchor(0, frozenset(range(1, 5))))
    t0 = time.perf_counter()
    res = feasible(inst)
    print(f"\nanchored at v0 with {{1,2,3,4}}: feasible={res.feasible} "
          f"({res.nodes_explored} DP nodes, {1000 * (time.perf_counter() - t0):.1f} ms)")

    chk = free_check_list(Instance(Cycle(6), lists, 4), 0)
    print(f"first failing 4-subset of L(v0): {sorted(chk.failing)}")

    print(f"\nratio 9/4 vs fchr(C_6) = {fmt_ratio(fchr_cycle(6))}")
    rng = random.Random(0)
    ok = 0
    for _ in range(200):
        ls = random_lists(rng, 6, 7)
        anc = random_anchor(rng, ls, 3)
        ok += solve_free_cycle(CycleInstance(ls, 3, anc.vertex, anc.colors)).colored
    print(f"random 7-lists, b=3: {ok}/200 colored")


if __name__ == "__main__":
    main()
