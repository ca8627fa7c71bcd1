"""Random instances and graph builders used by the sweep, scripts and tests."""

from __future__ import annotations

import random
from typing import Optional

from .core import Anchor, Cycle, Instance, TreeOfCycles


def random_list(rng: random.Random, size: int, universe: int) -> frozenset:
    """``size`` distinct colors drawn from ``1..universe``."""
    return frozenset(rng.sample(range(1, universe + 1), size))


def random_lists(rng, count: int, a: int, universe: Optional[int] = None) -> tuple:
    universe = universe or 3 * a
    return tuple(random_list(rng, a, universe) for _ in range(count))


def random_anchor(rng, lists, b: int, vertex: Optional[int] = None) -> Anchor:
    v = rng.randrange(len(lists)) if vertex is None else vertex
    return Anchor(v, frozenset(rng.sample(sorted(lists[v]), b)))


def random_cycle_instance(rng, n, a, b, universe=None) -> Instance:
    lists = random_lists(rng, n, a, universe)
    return Instance(Cycle(n), lists, b, random_anchor(rng, lists, b))


def random_path_lists(rng, n, a, b, universe=None) -> tuple:
    """Lists for a path of length n: ends of size b, inner lists of size a."""
    universe = universe or 3 * a
    return (
        (random_list(rng, b, universe),)
        + tuple(random_list(rng, a, universe) for _ in range(n - 1))
        + (random_list(rng, b, universe),)
    )


def binocular(m: int, n: int, p: int) -> TreeOfCycles:
    """Cycles ``u_0..u_{m-1}`` and ``v_0..v_{n-1}`` joined by a path of length p >= 1.

    Vertices: u_i -> i, v_j -> m + j, inner path vertices x_k -> m + n + k - 1.
    """
    if m < 3 or n < 3 or p < 1:
        raise ValueError("binocular graphs here need m, n >= 3 and p >= 1")
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges += [(m + j, m + (j + 1) % n) for j in range(n)]
    chain = [0] + [m + n + k - 1 for k in range(1, p)] + [m]
    edges += list(zip(chain, chain[1:]))
    return TreeOfCycles(m + n + p - 1, tuple(edges))


def random_tree_of_cycles(
    rng: random.Random, max_vertices: int, girth: int, extra_len: int = 3
) -> TreeOfCycles:
    """A random tree of cycles on at most ``max_vertices`` vertices with exact girth.

    Starts from a ``girth``-cycle, then hangs pendant vertices and new cycles
    (length girth..girth+extra_len, joined by a bridge) off random vertices.
    Vertex labels are shuffled at the end.
    """
    if max_vertices < girth:
        raise ValueError("max_vertices must be at least the girth")
    edges = [(i, (i + 1) % girth) for i in range(girth)]
    nv = girth
    target = rng.randint(girth, max_vertices)
    while nv < target:
        u = rng.randrange(nv)
        room = target - nv
        length = rng.randint(girth, girth + extra_len)
        if rng.random() < 0.4 and room >= length:
            base = nv
            edges += [(base + i, base + (i + 1) % length) for i in range(length)]
            edges.append((u, base + rng.randrange(length)))
            nv += length
        else:
            edges.append((u, nv))
            nv += 1
    perm = list(range(nv))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in edges]
    rng.shuffle(edges)
    return TreeOfCycles(nv, tuple(edges))


def random_tree(rng: random.Random, nv: int) -> TreeOfCycles:
    return TreeOfCycles(nv, tuple((v, rng.randrange(v)) for v in range(1, nv)))
