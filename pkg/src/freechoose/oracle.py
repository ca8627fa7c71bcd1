"""Exact (L,b)-colorability by search.

Paths and cycles use a dynamic program over per-vertex b-subsets. Trees of
cycles use the same DP inside a bottom-up pass over the block tree. A plain
backtracking search over arbitrary graphs is kept as an independent check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .core import (
    Anchor,
    Coloring,
    Cycle,
    Instance,
    Path,
    TreeOfCycles,
    validate_tree_of_cycles,
)

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """The search explored more nodes than its budget allows."""


@dataclass
class OracleResult:
    feasible: bool
    witness: Optional[Coloring] = None
    nodes_explored: int = 0


@dataclass
class FreeCheckResult:
    all_extendable: bool
    failing: Optional[frozenset] = None
    checked: int = 0
    nodes_explored: int = 0


def subsets(colors, b: int):
    """b-subsets of ``colors`` in lexicographic order."""
    return [frozenset(s) for s in combinations(sorted(colors), b)]


# FULL stands for "every b-subset of the vertex's list" and lets the DP skip
# enumeration once reachability saturates.
FULL = None


class _Counter:
    def __init__(self, budget):
        self.nodes = 0
        self.budget = budget

    def add(self, k):
        self.nodes += k
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(f"oracle exceeded its budget of {self.budget} nodes")


def path_dp(
    lists: Sequence[frozenset],
    b: int,
    candidates: Optional[Sequence] = None,
    budget: Optional[int] = DEFAULT_BUDGET,
    counter: Optional[_Counter] = None,
) -> tuple[Optional[Coloring], int]:
    """Find an (L,b)-coloring of the path ``0..len(lists)-1``.

    ``candidates[i]`` optionally restricts vertex i to an explicit family of
    b-sets (``None`` = all b-subsets of ``lists[i]``). Returns the
    lexicographically-greedy witness found by backtracking through the
    reachable families, or None, together with the node count.
    """
    ctr = counter or _Counter(budget)
    start = ctr.nodes
    n = len(lists)
    if n == 0:
        return (), 0
    if candidates is None:
        candidates = [FULL] * n

    def family(i):
        c = candidates[i]
        if c is FULL:
            ctr.add(comb(len(lists[i]), b))
            return subsets(lists[i], b)
        return list(c)

    reach: list = [None] * n
    if candidates[0] is FULL:
        if len(lists[0]) < b:
            return None, ctr.nodes - start
        reach[0] = FULL
    else:
        reach[0] = list(candidates[0])
        if not reach[0]:
            return None, ctr.nodes - start

    for i in range(1, n):
        prev, Lp, L = reach[i - 1], lists[i - 1], lists[i]
        cand = candidates[i]
        if prev is FULL:
            if len(Lp) >= 2 * b:
                # any b-set at i leaves at least b free colors at i-1
                if cand is FULL:
                    ctr.add(1)
                    reach[i] = FULL
                    continue
                reach[i] = list(cand)
                ctr.add(len(reach[i]))
            else:
                fam = family(i)
                ctr.add(len(fam))
                reach[i] = [S for S in fam if len(Lp - S) >= b]
        else:
            shared = Lp & L
            proj = {T & shared for T in prev}
            ctr.add(len(prev))
            if frozenset() in proj:
                if cand is FULL:
                    reach[i] = FULL if len(L) >= b else []
                    continue
                reach[i] = list(cand)
            else:
                fam = family(i)
                ctr.add(len(fam) * len(proj))
                reach[i] = [S for S in fam if any(not (p & S) for p in proj)]
        if cand is FULL and reach[i] is not FULL and len(reach[i]) == comb(len(L), b):
            reach[i] = FULL
        if reach[i] is not FULL and not reach[i]:
            return None, ctr.nodes - start

    col: list = [None] * n
    last = reach[n - 1]
    col[n - 1] = frozenset(sorted(lists[n - 1])[:b]) if last is FULL else last[0]
    for i in range(n - 2, -1, -1):
        nxt = col[i + 1]
        if reach[i] is FULL:
            col[i] = frozenset(sorted(lists[i] - nxt)[:b])
        else:
            col[i] = next(T for T in reach[i] if not (T & nxt))
    return tuple(col), ctr.nodes - start


def _cycle_dp(lists, b, anchor, counter):
    n = len(lists)
    v = anchor.vertex if anchor else 0
    order = [(v + k) % n for k in range(n)]
    cut = [lists[u] for u in order] + [lists[v]]
    starts = [anchor.colors] if anchor else subsets(lists[v], b)
    for S in starts:
        cands = [[S]] + [FULL] * (n - 1) + [[S]]
        col, _ = path_dp(cut, b, cands, counter=counter)
        if col is not None:
            out = [None] * n
            for k, u in enumerate(order):
                out[u] = col[k]
            return tuple(out)
    return None


def _path_candidates(inst: Instance):
    cands = [FULL] * inst.num_vertices
    if inst.anchor is not None:
        cands[inst.anchor.vertex] = [inst.anchor.colors]
    return cands


def _tree_dp(inst: Instance, counter: _Counter):
    """Bottom-up DP over the block tree of a tree of cycles."""
    structure = validate_tree_of_cycles(inst.shape)
    lists, b = inst.lists, inst.b
    root = inst.anchor.vertex if inst.anchor else 0
    blocks = [("bridge", e) for e in structure.bridges] + [
        ("cycle", c) for c in structure.cycles
    ]
    at: dict[int, list[int]] = {}
    for k, (_, verts) in enumerate(blocks):
        for x in verts:
            at.setdefault(x, []).append(k)

    # children[u] = list of (kind, child vertices in order away from u)
    children: dict[int, list] = {x: [] for x in range(inst.num_vertices)}
    seen_blocks = set()
    order = []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        order.append(u)
        for k in at.get(u, []):
            if k in seen_blocks:
                continue
            seen_blocks.add(k)
            kind, verts = blocks[k]
            if kind == "bridge":
                w = verts[1] if verts[0] == u else verts[0]
                children[u].append(("bridge", (w,)))
                queue.append(w)
            else:
                i = verts.index(u)
                rest = verts[i + 1:] + verts[:i]
                children[u].append(("cycle", rest))
                queue.extend(rest)

    feas: dict[int, list] = {}
    for u in reversed(order):
        if inst.anchor is not None and u == root:
            cand = [inst.anchor.colors]
        else:
            cand = subsets(lists[u], b)
            counter.add(len(cand))
        for kind, verts in children[u]:
            if kind == "bridge":
                fw = feas[verts[0]]
                counter.add(len(cand) * len(fw))
                cand = [S for S in cand if any(not (S & T) for T in fw)]
            else:
                sub_lists = [lists[u]] + [lists[x] for x in verts] + [lists[u]]
                keep = []
                for S in cand:
                    cands = [[S]] + [feas[x] for x in verts] + [[S]]
                    col, _ = path_dp(sub_lists, b, cands, counter=counter)
                    if col is not None:
                        keep.append(S)
                cand = keep
            if not cand:
                break
        feas[u] = cand
        if not cand:
            return None

    col: dict[int, frozenset] = {root: feas[root][0]}
    for u in order:
        S = col[u]
        for kind, verts in children[u]:
            if kind == "bridge":
                w = verts[0]
                col[w] = next(T for T in feas[w] if not (S & T))
            else:
                sub_lists = [lists[u]] + [lists[x] for x in verts] + [lists[u]]
                cands = [[S]] + [feas[x] for x in verts] + [[S]]
                pc, _ = path_dp(sub_lists, b, cands, counter=counter)
                for x, c in zip(verts, pc[1:-1]):
                    col[x] = c
    return tuple(col[x] for x in range(inst.num_vertices))


def feasible(instance: Instance, budget: Optional[int] = DEFAULT_BUDGET) -> OracleResult:
    """Decide whether an (L,b)-coloring exists, respecting the anchor if any."""
    ctr = _Counter(budget)
    shape = instance.shape
    if isinstance(shape, Path):
        col, _ = path_dp(instance.lists, instance.b, _path_candidates(instance), counter=ctr)
    elif isinstance(shape, Cycle):
        col = _cycle_dp(instance.lists, instance.b, instance.anchor, ctr)
    elif isinstance(shape, TreeOfCycles):
        col = _tree_dp(instance, ctr)
    else:
        raise TypeError(f"unsupported shape {shape!r}")
    return OracleResult(col is not None, col, ctr.nodes)


def free_check_list(
    instance: Instance, v: int, budget: Optional[int] = DEFAULT_BUDGET
) -> FreeCheckResult:
    """Try every b-subset of L(v) as the fixed set at v, lexicographically."""
    res = FreeCheckResult(True)
    for c0 in subsets(instance.lists[v], instance.b):
        anchored = Instance(instance.shape, instance.lists, instance.b, Anchor(v, c0))
        r = feasible(anchored, budget)
        res.checked += 1
        res.nodes_explored += r.nodes_explored
        if not r.feasible:
            res.all_extendable = False
            res.failing = c0
            break
    return res


def backtrack_feasible(
    instance: Instance, budget: Optional[int] = DEFAULT_BUDGET
) -> OracleResult:
    """Plain backtracking over any graph; independent of the DP routes."""
    nv = instance.num_vertices
    b = instance.b
    adj: list[list[int]] = [[] for _ in range(nv)]
    for u, v in instance.shape.edges():
        adj[u].append(v)
        adj[v].append(u)
    anchor = instance.anchor
    first = anchor.vertex if anchor else 0
    order, seen = [], set()
    for s in [first] + list(range(nv)):
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    choices = [subsets(L, b) for L in instance.lists]
    if anchor:
        choices[anchor.vertex] = [anchor.colors]
    col: list = [None] * nv
    ctr = _Counter(budget)

    def go(k):
        if k == nv:
            return True
        u = order[k]
        for S in choices[u]:
            ctr.add(1)
            if all(col[w] is None or not (col[w] & S) for w in adj[u]):
                col[u] = S
                if go(k + 1):
                    return True
                col[u] = None
        return False

    ok = go(0)
    return OracleResult(ok, tuple(col) if ok else None, ctr.nodes)
