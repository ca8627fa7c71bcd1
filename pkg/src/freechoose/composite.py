"""Free colorings of trees and trees of cycles by propagation from the anchor.

Coloring starts at the anchored vertex and spreads through the block tree.
A bridge gives the far vertex b colors missing from the near one. A cycle is
entered through one colored vertex and is solved as a free cycle anchored
there. Cycles are disjoint, so no block is entered twice.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import oracle
from .core import (
    BlockStructure,
    Instance,
    InstanceError,
    Outcome,
    SolveReport,
    fchr_cycle,
    is_guaranteed_cycle,
    validate_tree_of_cycles,
)
from .cyclesolver import CycleInstance, solve_free_cycle


@dataclass(frozen=True)
class BlockTree:
    structure: BlockStructure
    blocks: tuple  # ("bridge", (u, v)) or ("cycle", (v0, v1, ...))
    at: dict  # vertex -> indices of the blocks containing it
    root: int

    @classmethod
    def build(cls, instance: Instance, root: int) -> "BlockTree":
        st = validate_tree_of_cycles(instance.shape)
        blocks = tuple(("bridge", e) for e in st.bridges) + tuple(
            ("cycle", c) for c in st.cycles
        )
        at: dict[int, list[int]] = {}
        for k, (_, verts) in enumerate(blocks):
            for x in verts:
                at.setdefault(x, []).append(k)
        return cls(st, blocks, at, root)


def _uniform_size(instance: Instance) -> int:
    a = instance.list_size
    if a is None:
        raise InstanceError("lists must all have the same size a")
    return a


def composite_threshold(girth: Optional[int]) -> Fraction:
    return Fraction(2) if girth is None else fchr_cycle(girth)


def _propagate(instance: Instance, tree: BlockTree, rng, report) -> Optional[tuple]:
    lists, b = instance.lists, instance.b
    col: dict[int, frozenset] = {tree.root: instance.anchor.colors}
    done: set[int] = set()
    frontier = deque([tree.root])
    while frontier:
        if rng is not None:
            k = rng.randrange(len(frontier))
            frontier.rotate(-k)
        u = frontier.popleft()
        todo = [k for k in tree.at.get(u, []) if k not in done]
        if rng is not None:
            rng.shuffle(todo)
        for k in todo:
            done.add(k)
            kind, verts = tree.blocks[k]
            if kind == "bridge":
                w = verts[1] if verts[0] == u else verts[0]
                free = sorted(lists[w] - col[u])
                report.steps += 1
                if len(free) < b:
                    return None
                col[w] = frozenset(free[:b])
                frontier.append(w)
                continue
            i = verts.index(u)
            ring = verts[i:] + verts[:i]
            sub = solve_free_cycle(
                CycleInstance(tuple(lists[x] for x in ring), b, 0, col[u])
            )
            report.steps += sub.steps
            report.repairs += sub.repairs
            report.fallback_used |= sub.fallback_used
            if not sub.colored:
                return None
            for x, c in zip(ring[1:], sub.coloring[1:]):
                col[x] = c
                frontier.append(x)
    return tuple(col[x] for x in range(instance.num_vertices))


def solve_free_composite(
    instance: Instance,
    rng: Optional[random.Random] = None,
    oracle_budget: Optional[int] = oracle.DEFAULT_BUDGET,
) -> SolveReport:
    """Free (L,b)-coloring of a tree of cycles from its anchor.

    Colored whenever ``a/b`` reaches ``2 + 1/floor(g/2)`` for girth g, or
    ``a >= 2b`` when there is no cycle. ``rng`` randomizes the traversal
    order; success above the threshold does not depend on it. When the
    propagation fails, the exact oracle decides within ``oracle_budget``
    nodes, and the outcome is ``failed`` if the budget runs out.
    """
    if instance.anchor is None:
        raise InstanceError("free coloring needs an anchor (vertex, c0)")
    a, b = _uniform_size(instance), instance.b
    tree = BlockTree.build(instance, instance.anchor.vertex)
    g = tree.structure.girth
    if g is None:
        met = a >= 2 * b
    else:
        met = b >= 1 and is_guaranteed_cycle(g, a, b)
    report = SolveReport(
        Outcome.COLORED,
        threshold_met=met,
        threshold=composite_threshold(g),
        total_colors=instance.total_colors,
        solver="propagation",
    )
    col = _propagate(instance, tree, rng, report)
    if col is not None:
        report.coloring = col
        return report
    report.fallback_used = True
    report.solver = "exact-tree-dp"
    try:
        res = oracle.feasible(instance, budget=oracle_budget)
    except oracle.BudgetExceeded:
        report.outcome = Outcome.FAILED
        return report
    report.steps += res.nodes_explored
    if res.feasible:
        report.coloring = res.witness
    else:
        report.outcome = Outcome.INFEASIBLE
    return report


def solve_free_tree(instance: Instance) -> SolveReport:
    """Free coloring of a tree: BFS from the anchor, smallest free colors first."""
    if instance.anchor is None:
        raise InstanceError("free coloring needs an anchor (vertex, c0)")
    b = instance.b
    short = [v for v, L in enumerate(instance.lists) if len(L) < 2 * b]
    if short:
        raise InstanceError(f"trees need a >= 2b; L({short[0]}) has fewer than {2 * b} colors")
    tree = BlockTree.build(instance, instance.anchor.vertex)
    if tree.structure.cycles:
        raise InstanceError("graph has a cycle; use solve_free_composite")
    report = SolveReport(
        Outcome.COLORED,
        threshold_met=True,
        threshold=Fraction(2),
        total_colors=instance.total_colors,
        solver="propagation",
    )
    report.coloring = _propagate(instance, tree, None, report)
    return report
