"""Free (L,b)-colorings of cycles, and the even-cycle counterexample lists."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import oracle
from .core import (
    InstanceError,
    Outcome,
    SolveReport,
    fchr_cycle,
    is_guaranteed_cycle,
    total_colors,
)
from .pathcolor import PathInstance, gc_paused, solve_path


@dataclass(frozen=True)
class CycleInstance:
    lists: tuple
    b: int
    anchor: int
    c0: frozenset

    def __post_init__(self):
        lists = tuple(frozenset(L) for L in self.lists)
        object.__setattr__(self, "lists", lists)
        object.__setattr__(self, "c0", frozenset(self.c0))
        if len(lists) < 3:
            raise InstanceError(f"cycle length must be >= 3, got {len(lists)}")
        if len({len(L) for L in lists}) != 1:
            raise InstanceError("cycle lists must all have the same size a")
        if self.b < 1:
            raise InstanceError(f"b must be >= 1, got {self.b}")
        if not 0 <= self.anchor < len(lists):
            raise InstanceError(f"anchor vertex {self.anchor} out of range")
        if len(self.c0) != self.b or not self.c0 <= lists[self.anchor]:
            raise InstanceError(
                f"c0={sorted(self.c0)} must be a {self.b}-subset of L({self.anchor})"
            )

    @property
    def n(self) -> int:
        return len(self.lists)

    @property
    def a(self) -> int:
        return len(self.lists[0])


@gc_paused
def solve_free_cycle(ci: CycleInstance, pipeline: bool = True) -> SolveReport:
    """Color the cycle with ``c(anchor) = c0`` by cutting it open at the anchor.

    The cut path runs anchor, anchor+1, ..., anchor-1, anchor' with both ends
    given the list ``c0``; its coloring folds back onto the cycle. Colors are
    reported under the original vertex labels. Above the threshold the result
    is always colored; below it the exact DP settles the instance.
    """
    n, a, b = ci.n, ci.a, ci.b
    order = [(ci.anchor + k) % n for k in range(n)]
    cut = [ci.c0] + [ci.lists[u] for u in order[1:]] + [ci.c0]
    if a > 2 * b:
        rep = solve_path(PathInstance(tuple(cut), b), pipeline=pipeline)
    else:
        cands = [[ci.c0]] + [oracle.FULL] * (n - 1) + [[ci.c0]]
        col, nodes = oracle.path_dp(cut, b, cands, budget=None)
        rep = SolveReport(
            Outcome.COLORED if col is not None else Outcome.INFEASIBLE,
            coloring=col,
            fallback_used=pipeline,
            steps=nodes,
            solver="exact-dp",
        )
    rep.threshold_met = is_guaranteed_cycle(n, a, b)
    rep.threshold = fchr_cycle(n)
    rep.total_colors = total_colors(ci.lists)
    if rep.coloring is not None:
        out = [None] * n
        for k, u in enumerate(order):
            out[u] = rep.coloring[k]
        rep.coloring = tuple(out)
    return rep


def counterexample_list(p: int, a: int, b: int) -> tuple:
    """The a-list of C_{2p} that admits no (L,b)-coloring with c(0) = {1..b}.

    Needs ``p >= 2``, ``a >= b >= 1`` and ``a/b < 2 + 1/p``.
    """
    if p < 2:
        raise ValueError(f"need p >= 2, got p={p}")
    if not a >= b >= 1:
        raise ValueError(f"need a >= b >= 1, got a={a}, b={b}")
    if not a * p < (2 * p + 1) * b:
        raise ValueError(
            f"need a/b < 2 + 1/p, but {a}/{b} >= {Fraction(2 * p + 1, p)} (p={p})"
        )

    def span(lo, hi):
        return frozenset(range(lo, hi + 1))

    lists = []
    for i in range(2 * p):
        if i in (0, 1):
            L = span(1, a)
        elif i == 2 * p - 1:
            L = span(1, b) | span(1 + (p - 1) * a, p * a - b)
        elif i % 2:
            k = (i - 1) // 2
            L = span(k * a + 1, k * a + a)
        else:
            k = (i - 2) // 2
            L = span(b + k * a + 1, b + (k + 1) * a)
        lists.append(L)
    return tuple(lists)

