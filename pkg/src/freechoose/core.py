"""Domain types, coloring validation, exact thresholds and tree-of-cycles checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import networkx as nx

# A color set is a frozenset of non-negative ints; wherever an order matters
# (the "first b colors" rules) it is taken ascending via sorted().
ColorSet = frozenset
ListAssignment = tuple  # tuple[frozenset[int], ...], indexed by vertex
Coloring = tuple  # tuple[frozenset[int], ...], indexed by vertex


class InstanceError(ValueError):
    """Raised when an instance or one of its parts is malformed."""


class StructureError(ValueError):
    """Raised when a graph is not a tree of cycles."""


def color_set(colors: Iterable[int]) -> frozenset:
    s = frozenset(int(c) for c in colors)
    if any(c < 0 for c in s):
        raise InstanceError(f"color identifiers must be non-negative: {sorted(s)}")
    return s


def fmt_ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# graph shapes


@dataclass(frozen=True)
class Path:
    """Path of length ``n`` on vertices ``0..n``."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError(f"path length must be >= 0, got {self.n}")

    @property
    def num_vertices(self) -> int:
        return self.n + 1

    def edges(self) -> list[tuple[int, int]]:
        return [(i, i + 1) for i in range(self.n)]


@dataclass(frozen=True)
class Cycle:
    """Cycle of length ``n`` on vertices ``0..n-1``."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise InstanceError(f"cycle length must be >= 3, got {self.n}")

    @property
    def num_vertices(self) -> int:
        return self.n

    def edges(self) -> list[tuple[int, int]]:
        return [(i, (i + 1) % self.n) for i in range(self.n)]


@dataclass(frozen=True)
class TreeOfCycles:
    num_vertices: int
    edges_: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.num_vertices < 1:
            raise InstanceError("a graph needs at least one vertex")
        object.__setattr__(
            self, "edges_", tuple((int(u), int(v)) for u, v in self.edges_)
        )

    def edges(self) -> list[tuple[int, int]]:
        return list(self.edges_)


GraphShape = Union[Path, Cycle, TreeOfCycles]


def as_tree_of_cycles(shape: GraphShape) -> TreeOfCycles:
    if isinstance(shape, TreeOfCycles):
        return shape
    return TreeOfCycles(shape.num_vertices, tuple(shape.edges()))


# --------------------------------------------------------------------------
# instances and colorings


@dataclass(frozen=True)
class Anchor:
    vertex: int
    colors: frozenset


@dataclass(frozen=True)
class Instance:
    shape: GraphShape
    lists: ListAssignment
    b: int
    anchor: Optional[Anchor] = None

    def __post_init__(self):
        lists = tuple(frozenset(L) for L in self.lists)
        object.__setattr__(self, "lists", lists)
        nv = self.shape.num_vertices
        if len(lists) != nv:
            raise InstanceError(f"expected {nv} lists, got {len(lists)}")
        if self.b < 0:
            raise InstanceError(f"b must be non-negative, got {self.b}")
        for u, v in self.shape.edges():
            if not (0 <= u < nv and 0 <= v < nv):
                raise InstanceError(f"edge ({u}, {v}) has a vertex out of range")
        if self.anchor is not None:
            v, c0 = self.anchor.vertex, frozenset(self.anchor.colors)
            object.__setattr__(self, "anchor", Anchor(v, c0))
            if not 0 <= v < nv:
                raise InstanceError(f"anchor vertex {v} out of range")
            if len(c0) != self.b:
                raise InstanceError(
                    f"anchor set has {len(c0)} colors, expected b={self.b}"
                )
            if not c0 <= lists[v]:
                extra = sorted(c0 - lists[v])
                raise InstanceError(f"anchor colors {extra} not in L({v})")

    @property
    def num_vertices(self) -> int:
        return self.shape.num_vertices

    @property
    def list_size(self) -> Optional[int]:
        """The common list size ``a``, or None when sizes differ."""
        sizes = {len(L) for L in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def total_colors(self) -> int:
        return total_colors(self.lists)


def total_colors(lists: Sequence[frozenset]) -> int:
    return len(frozenset().union(*lists)) if lists else 0


@dataclass(frozen=True)
class Violation:
    rule: str  # "missing", "size", "containment", "edge", "anchor"
    vertex: Optional[int] = None
    edge: Optional[tuple[int, int]] = None
    detail: str = ""

    def __str__(self):
        where = f"edge {self.edge}" if self.edge is not None else f"vertex {self.vertex}"
        return f"{self.rule} violation at {where}: {self.detail}"


def validate_coloring(instance: Instance, coloring: Sequence) -> list[Violation]:
    """Check ``coloring`` against ``instance``; an empty list means it is valid.

    Every other module's output is checked through this function.
    """
    out = []
    nv = instance.num_vertices
    b = instance.b
    col = [None if c is None else frozenset(c) for c in coloring]
    if len(col) < nv:
        col += [None] * (nv - len(col))
    for v in range(nv):
        c = col[v]
        if c is None:
            out.append(Violation("missing", vertex=v, detail="no color set assigned"))
            continue
        if len(c) != b:
            out.append(Violation("size", vertex=v, detail=f"|c({v})|={len(c)}, expected {b}"))
        if not c <= instance.lists[v]:
            extra = sorted(c - instance.lists[v])
            out.append(Violation("containment", vertex=v, detail=f"colors {extra} not in L({v})"))
    for u, v in instance.shape.edges():
        if col[u] is None or col[v] is None:
            continue
        common = col[u] & col[v]
        if common:
            out.append(Violation("edge", edge=(u, v), detail=f"shared colors {sorted(common)}"))
    if instance.anchor is not None:
        v = instance.anchor.vertex
        if col[v] is not None and col[v] != instance.anchor.colors:
            out.append(
                Violation(
                    "anchor",
                    vertex=v,
                    detail=f"c({v})={sorted(col[v])}, anchor requires {sorted(instance.anchor.colors)}",
                )
            )
    return out


# --------------------------------------------------------------------------
# solve reports


class Outcome(str, enum.Enum):
    COLORED = "colored"
    INFEASIBLE = "infeasible"  # proven by exact search
    FAILED = "failed"  # heuristic failure with no exact verdict available


@dataclass
class SolveReport:
    outcome: Outcome
    coloring: Optional[Coloring] = None
    threshold_met: bool = False
    threshold: Optional[Fraction] = None  # smallest a/b with a guarantee
    fallback_used: bool = False
    repairs: int = 0
    total_colors: int = 0
    steps: int = 0
    solver: str = ""

    @property
    def colored(self) -> bool:
        return self.outcome is Outcome.COLORED


# --------------------------------------------------------------------------
# thresholds


def even_ceil(x) -> int:
    """Smallest even integer ``p`` with ``p >= x``."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"even_ceil needs x >= 0, got {x}")
    p = math.ceil(x)
    return p + (p & 1)


def fchr_cycle(n: int) -> Fraction:
    """Free-choice ratio of the n-cycle, ``2 + 1/floor(n/2)``."""
    if n < 3:
        raise ValueError(f"cycles need n >= 3, got {n}")
    k = n // 2
    return Fraction(2 * k + 1, k)


def is_guaranteed_cycle(n: int, a: int, b: int) -> bool:
    """True iff ``a/b >= fchr_cycle(n)``, decided in integer arithmetic."""
    if n < 3 or a < 1 or b < 1:
        raise ValueError(f"need n >= 3, a >= 1, b >= 1; got n={n}, a={a}, b={b}")
    k = n // 2
    return a * k >= 2 * b * k + b


# --------------------------------------------------------------------------
# tree-of-cycles structure


@dataclass(frozen=True)
class BlockStructure:
    cycles: tuple[tuple[int, ...], ...]  # vertices in cyclic order
    bridges: tuple[tuple[int, int], ...]
    girth: Optional[int]


def _cycle_order(block_edges) -> tuple[int, ...]:
    adj: dict[int, list[int]] = {}
    for u, v in block_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = min(adj)
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        prev, cur = cur, nxt
    return tuple(order)


def validate_tree_of_cycles(shape: GraphShape) -> BlockStructure:
    """Decompose ``shape`` into cycle blocks and bridges.

    Raises StructureError naming the first violated condition: malformed
    edges, disconnected, a block that is neither an edge nor a chordless
    cycle, two cycles sharing a vertex, or a cyclic quotient.
    """
    shape = as_tree_of_cycles(shape)
    nv = shape.num_vertices
    g = nx.Graph()
    g.add_nodes_from(range(nv))
    for u, v in shape.edges():
        if not (0 <= u < nv and 0 <= v < nv):
            raise StructureError(f"edge ({u}, {v}) has a vertex out of range")
        if u == v:
            raise StructureError(f"self-loop at vertex {u}")
        if g.has_edge(u, v):
            raise StructureError(f"duplicate edge ({u}, {v})")
        g.add_edge(u, v)
    if not nx.is_connected(g):
        raise StructureError("graph is disconnected")

    cycles, bridges = [], []
    for block in nx.biconnected_component_edges(g):
        block = [tuple(sorted(e)) for e in block]
        verts = {x for e in block for x in e}
        if len(block) == 1:
            bridges.append(block[0])
        elif len(block) == len(verts):
            cycles.append(_cycle_order(block))
        else:
            raise StructureError(
                f"block on vertices {sorted(verts)} is not a chordless cycle"
            )

    seen: dict[int, int] = {}
    for k, cyc in enumerate(cycles):
        for x in cyc:
            if x in seen:
                raise StructureError(f"cycles share vertex {x}; cycles must be disjoint")
            seen[x] = k

    # collapse each cycle to one node; the bridges must then form a tree
    def node(x):
        return ("c", seen[x]) if x in seen else ("v", x)

    q = nx.Graph()
    q.add_nodes_from({node(x) for x in range(nv)})
    for u, v in bridges:
        q.add_edge(node(u), node(v))
    if q.number_of_edges() != len(bridges) or not nx.is_tree(q):
        raise StructureError("collapsing the cycles does not produce a tree")

    cycles.sort()
    bridges.sort()
    girth = min((len(c) for c in cycles), default=None)
    return BlockStructure(tuple(cycles), tuple(bridges), girth)
