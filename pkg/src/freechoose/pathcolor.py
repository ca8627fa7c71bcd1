"""Coloring a path whose end lists have size b and inner lists size a = 2b + e.

The pipeline renames colors so that lists two or more steps apart are
disjoint (a waterfall list), colors greedily from vertex 0, then maps colors
back and repairs the conflicts that renaming hid. When any step fails the
exact path DP from :mod:`freechoose.oracle` takes over.
"""

from __future__ import annotations

import functools
import gc
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import oracle
from .core import InstanceError, Outcome, SolveReport, even_ceil, total_colors


class HeuristicFailure(Exception):
    """The greedy pipeline got stuck. This does not prove infeasibility."""

    def __init__(self, vertex: int, reason: str):
        super().__init__(f"vertex {vertex}: {reason}")
        self.vertex = vertex


@dataclass(frozen=True)
class WaterfallList:
    lists: tuple  # renamed lists, frozensets
    rename_log: tuple  # per vertex: {renamed color: original color}
    source: tuple  # the lists before renaming

    def original(self, i: int) -> frozenset:
        log = self.rename_log[i]
        return frozenset(log.get(x, x) for x in self.lists[i])


@dataclass(frozen=True)
class PathInstance:
    lists: tuple
    b: int

    def __post_init__(self):
        lists = tuple(frozenset(L) for L in self.lists)
        object.__setattr__(self, "lists", lists)
        if len(lists) < 3:
            raise InstanceError("path instances need length n >= 2")
        if self.b < 1:
            raise InstanceError(f"b must be >= 1, got {self.b}")
        for i in (0, len(lists) - 1):
            if len(lists[i]) != self.b:
                raise InstanceError(f"|L({i})|={len(lists[i])}, endpoints need size b={self.b}")
        sizes = {len(L) for L in lists[1:-1]}
        if len(sizes) != 1:
            raise InstanceError(f"inner lists must share one size, got sizes {sorted(sizes)}")
        if self.e < 1:
            raise InstanceError(f"need a > 2b (e >= 1), got a={self.a}, b={self.b}")

    @property
    def n(self) -> int:
        return len(self.lists) - 1

    @property
    def a(self) -> int:
        return len(self.lists[1])

    @property
    def e(self) -> int:
        return self.a - 2 * self.b

    @property
    def min_length(self) -> int:
        """Length from which a coloring is guaranteed to exist.

        ``n >= min_length`` holds exactly when ``a/b >= 2 + 1/floor(n/2)``.
        """
        return even_ceil(Fraction(2 * self.b, self.e))


def waterfallize(lists: Sequence[frozenset]) -> WaterfallList:
    """Rename colors so that lists at distance >= 2 are disjoint.

    The occurrences of each color split into runs of consecutive vertices and
    each run into chunks of at most two vertices, paired from the start of
    the run. The first chunk keeps the original identifier. Every later
    chunk gets a fresh one, allocated above the largest original color. A
    color shared by three consecutive lists cannot keep both adjacencies, so
    the conflicts hidden that way are left to :func:`dewaterfallize`.
    """
    source = tuple(frozenset(L) for L in lists)
    fresh = max((x for L in source for x in L), default=-1) + 1
    state: dict[int, tuple[int, int, int]] = {}  # color -> (last vertex, chunk start, id)
    new, logs = [], []
    for i, L in enumerate(source):
        ids, log = [], {}
        for x in L:
            st = state.get(x)
            if st is None:
                cid, start = x, i
            elif st[0] == i - 1 and st[1] == i - 1:
                cid, start = st[2], i - 1
            else:
                cid, start = fresh, i
                fresh += 1
            state[x] = (i, start, cid)
            if cid != x:
                log[cid] = x
            ids.append(cid)
        new.append(frozenset(ids) if log else L)
        logs.append(log)
    return WaterfallList(tuple(new), tuple(logs), source)


def greedy_forward(wl: WaterfallList, b: int, end_fixed: bool = True) -> tuple:
    """Color vertices 0, 1, ... in order, each with its b smallest free colors.

    Vertex 0 takes its whole list. With ``end_fixed`` the last vertex also
    takes its whole list and the vertex before it must avoid that list too.
    """
    lists = wl.lists
    n = len(lists) - 1
    if b == 0:
        return tuple(frozenset() for _ in lists)
    if len(lists[0]) != b:
        raise ValueError(f"vertex 0 needs a list of size b={b}")
    if end_fixed and len(lists[n]) != b:
        raise ValueError(f"vertex {n} needs a list of size b={b}")
    out = [lists[0]]
    prev = lists[0]
    stop = n - 1 if end_fixed else n + 1
    for i in range(1, stop):
        avail = sorted(lists[i] - prev)
        if len(avail) < b:
            raise HeuristicFailure(i, f"only {len(avail)} free colors, need {b}")
        prev = frozenset(avail[:b])
        out.append(prev)
    if end_fixed and n >= 2:
        avail = sorted(lists[n - 1] - prev - lists[n])
        if len(avail) < b:
            raise HeuristicFailure(n - 1, f"only {len(avail)} colors avoid both neighbours, need {b}")
        prev = frozenset(avail[:b])
        out.append(prev)
    if end_fixed:
        if n >= 1 and prev & lists[n]:
            raise HeuristicFailure(n, "fixed end list meets its neighbour")
        out.append(lists[n])
    return tuple(out)


def dewaterfallize(
    coloring: Sequence[frozenset],
    wl: WaterfallList,
    rescue: Optional[Callable[[list, int], Optional[int]]] = None,
) -> tuple[tuple, int]:
    """Map a coloring of renamed lists back to original colors.

    Edges whose two ends now share an original color are repaired left to
    right. The vertex with the larger list (the right one on ties) swaps
    shared colors for its smallest list colors that neither neighbour uses;
    whatever it cannot swap, the other vertex tries. If both fail,
    ``rescue(col, i)`` may recolor a stretch around edge i in place and
    return the vertex where the pass resumes; otherwise HeuristicFailure.
    Returns the coloring and the number of shared colors repaired.
    """
    n = len(coloring) - 1
    col = [
        frozenset([log.get(x, x) for x in c]) if log else frozenset(c)
        for c, log in zip(coloring, wl.rename_log)
    ]
    orig = wl.source
    repairs = 0

    def fix(j, bad):
        taken = col[j]
        if j > 0:
            taken = taken | col[j - 1]
        if j < n:
            taken = taken | col[j + 1]
        spare = sorted(orig[j] - taken)[: len(bad)]
        if spare:
            drop = frozenset(sorted(bad)[: len(spare)])
            col[j] = (col[j] - drop) | frozenset(spare)
        return len(spare)

    i = 0
    while i < n:
        bad = col[i] & col[i + 1]
        if not bad:
            i += 1
            continue
        first, second = (i, i + 1) if len(orig[i]) > len(orig[i + 1]) else (i + 1, i)
        if fix(first, bad) < len(bad):
            rest = col[i] & col[i + 1]
            if fix(second, rest) < len(rest):
                resume = rescue(col, i) if rescue is not None else None
                if resume is None:
                    raise HeuristicFailure(
                        i, f"cannot repair shared colors {sorted(bad)} on edge ({i}, {i + 1})"
                    )
                repairs += len(bad)
                i = resume
                continue
        repairs += len(bad)
        i += 1
    return tuple(col), repairs


def _window_rescue(source, b, counter):
    """Exact re-solve of a growing window around a stuck edge.

    The window's outer vertices keep their current colors. It doubles until
    the DP succeeds or it spans the whole path, in which case None is
    returned and the caller falls back to a full exact solve.
    """
    n = len(source) - 1

    def rescue(col, i):
        w = 2
        while True:
            lo, hi = max(0, i - w), min(n, i + 1 + w)
            cands = [[col[lo]]] + [oracle.FULL] * (hi - lo - 1) + [[col[hi]]]
            sub, nodes = oracle.path_dp(source[lo:hi + 1], b, cands, budget=None)
            counter["nodes"] += nodes
            counter["windows"] += 1
            if sub is not None:
                col[lo:hi + 1] = sub
                return hi
            if lo == 0 and hi == n:
                return None
            w *= 2

    return rescue


def gc_paused(fn):
    """Run ``fn`` with the cyclic collector off.

    The solvers allocate millions of acyclic frozensets; generational
    scans over them cost more than the coloring itself on long inputs.
    """

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        was_enabled = gc.isenabled()
        gc.disable()
        try:
            return fn(*args, **kwargs)
        finally:
            if was_enabled:
                gc.enable()

    return wrapper


@gc_paused
def solve_path(pi: PathInstance, pipeline: bool = True) -> SolveReport:
    """Color ``pi`` with both end lists used whole.

    Whenever ``n >= even_ceil(2b/e)`` the result is colored. Below that
    length the report is flagged ``threshold_met=False`` and may be
    infeasible. The pipeline's fallbacks are all exact. If greedy cannot
    avoid the fixed end, that last edge goes to repair. A stuck repair
    re-solves a window around it. If even the whole-path window fails, the
    full DP gives the verdict. ``pipeline=False`` runs the full DP directly.
    """
    lists, b, n = pi.lists, pi.b, pi.n
    report = SolveReport(
        Outcome.COLORED,
        threshold_met=n >= pi.min_length,
        threshold=Fraction(2 * (n // 2) + 1, n // 2),
        total_colors=total_colors(lists),
        solver="pipeline",
    )
    if pipeline:
        counter = {"nodes": 0, "windows": 0}
        wl = waterfallize(lists)
        try:
            col = greedy_forward(wl, b, end_fixed=True)
        except HeuristicFailure:
            head = WaterfallList(wl.lists[:-1], wl.rename_log[:-1], wl.source[:-1])
            col = greedy_forward(head, b, end_fixed=False) + (wl.lists[n],)
            report.fallback_used = True
        try:
            col, report.repairs = dewaterfallize(col, wl, _window_rescue(lists, b, counter))
            report.coloring = col
            report.steps = n + 1 + counter["nodes"]
            report.fallback_used |= counter["windows"] > 0
            return report
        except HeuristicFailure:
            report.steps = n + 1 + counter["nodes"]
    report.fallback_used = pipeline
    report.solver = "exact-dp"
    cands = [[lists[0]]] + [oracle.FULL] * (n - 1) + [[lists[n]]]
    col, nodes = oracle.path_dp(lists, b, cands, budget=None)
    report.steps += nodes
    if col is None:
        report.outcome = Outcome.INFEASIBLE
    else:
        report.coloring = col
    return report
