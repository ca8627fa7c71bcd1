import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freechoose.core import Anchor, Cycle, Instance, Path, TreeOfCycles, fchr_cycle, validate_coloring
from freechoose.cyclesolver import counterexample_list
from freechoose.generators import binocular, random_lists, random_tree_of_cycles
from freechoose.oracle import (
    BudgetExceeded,
    backtrack_feasible,
    feasible,
    free_check_list,
    path_dp,
    subsets,
)


def fs(*xs):
    return frozenset(xs)


C6_COUNTER = Instance(Cycle(6), counterexample_list(3, 9, 4), 4, Anchor(0, fs(1, 2, 3, 4)))


def test_c6_counterexample_infeasible():
    res = feasible(C6_COUNTER)
    assert not res.feasible and res.witness is None
    assert res.nodes_explored > 0


def test_triangle_with_two_colors_infeasible():
    assert not feasible(Instance(Cycle(3), (fs(1, 2),) * 3, 1)).feasible


def test_single_edge_feasible():
    res = feasible(Instance(Path(1), (fs(1, 2), fs(1, 2)), 1))
    assert res.feasible
    assert res.witness in [(fs(1), fs(2)), (fs(2), fs(1))]


def test_free_check_c6_counterexample():
    bare = Instance(Cycle(6), C6_COUNTER.lists, 4)
    res = free_check_list(bare, 0)
    assert not res.all_extendable
    assert res.failing == fs(1, 2, 3, 4)
    assert res.checked == 1  # {1,2,3,4} is the lexicographically first 4-subset


def test_free_check_c4_at_threshold():
    inst = Instance(Cycle(4), (frozenset(range(1, 6)),) * 4, 2)
    res = free_check_list(inst, 0)
    assert res.all_extendable and res.checked == 10
    # independent route: backtracking per anchor set
    for c0 in combinations(range(1, 6), 2):
        anchored = Instance(inst.shape, inst.lists, 2, Anchor(0, frozenset(c0)))
        assert backtrack_feasible(anchored).feasible


def test_free_check_triangle():
    res = free_check_list(Instance(Cycle(3), (fs(1, 2, 3),) * 3, 1), 0)
    assert res.all_extendable and res.checked == 3


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        backtrack_feasible(C6_COUNTER, budget=100)
    with pytest.raises(BudgetExceeded):
        feasible(C6_COUNTER, budget=10)


def test_path_dp_respects_candidates():
    lists = (fs(1, 2, 3),) * 3
    col, _ = path_dp(lists, 1, [[fs(2)], None, [fs(2)]])
    assert col[0] == col[2] == fs(2) and col[1] in (fs(1), fs(3))
    col, _ = path_dp(lists, 1, [[fs(2)], [fs(2)], None])
    assert col is None


def _small_instance(draw_rng, kind, nv, a, b, universe, anchored):
    lists = tuple(frozenset(draw_rng.sample(range(1, universe + 1), a)) for _ in range(nv))
    shape = Cycle(nv) if kind == "cycle" else Path(nv - 1)
    anchor = None
    if anchored:
        v = draw_rng.randrange(nv)
        anchor = Anchor(v, frozenset(draw_rng.sample(sorted(lists[v]), b)))
    return Instance(shape, lists, b, anchor)


small = st.tuples(
    st.integers(0, 10**9),
    st.sampled_from(["cycle", "path"]),
    st.integers(3, 8),
    st.integers(1, 2),
    st.booleans(),
)


@given(small, st.integers(0, 3))
def test_dp_agrees_with_backtracking(params, extra):
    seed, kind, nv, b, anchored = params
    rng = random.Random(seed)
    a = 2 * b + extra - 1
    inst = _small_instance(rng, kind, nv, max(a, b), b, max(a, b) + rng.randint(0, 3), anchored)
    dp = feasible(inst)
    bt = backtrack_feasible(inst, budget=None)
    assert dp.feasible == bt.feasible
    for res in (dp, bt):
        if res.feasible:
            assert validate_coloring(inst, res.witness) == []


@given(small)
def test_anchor_monotonicity(params):
    seed, kind, nv, b, _ = params
    rng = random.Random(seed)
    inst = _small_instance(rng, kind, nv, 2 * b, b, 2 * b + 2, True)
    if feasible(inst).feasible:
        assert feasible(Instance(inst.shape, inst.lists, b)).feasible


@given(small)
def test_color_permutation_and_rotation_symmetry(params):
    seed, _, nv, b, anchored = params
    rng = random.Random(seed)
    inst = _small_instance(rng, "cycle", nv, 2 * b + 1, b, 2 * b + 4, anchored)
    verdict = feasible(inst).feasible
    colors = sorted(set().union(*inst.lists))
    perm = dict(zip(colors, rng.sample(range(100, 100 + 3 * len(colors)), len(colors))))
    relist = tuple(frozenset(perm[x] for x in L) for L in inst.lists)
    anchor = inst.anchor and Anchor(inst.anchor.vertex, frozenset(perm[x] for x in inst.anchor.colors))
    assert feasible(Instance(inst.shape, relist, b, anchor)).feasible == verdict
    k = rng.randrange(nv)
    rotated = inst.lists[k:] + inst.lists[:k]
    anchor = inst.anchor and Anchor((inst.anchor.vertex - k) % nv, inst.anchor.colors)
    assert feasible(Instance(inst.shape, rotated, b, anchor)).feasible == verdict


def test_free_check_agrees_with_cycle_threshold():
    rng = random.Random(2024)
    for n in range(3, 8):
        for b in (1, 2):
            a = next(a for a in range(2 * b, 4 * b) if a * (n // 2) >= (2 * (n // 2) + 1) * b)
            assert a / b >= fchr_cycle(n)
            for _ in range(200):
                lists = random_lists(rng, n, a, rng.randint(a, 3 * a))
                assert free_check_list(Instance(Cycle(n), lists, b), 0).all_extendable


@given(st.integers(0, 10**9), st.integers(3, 5), st.booleans())
def test_tree_dp_agrees_with_backtracking(seed, girth, tight):
    rng = random.Random(seed)
    shape = random_tree_of_cycles(rng, 9, girth)
    b = 1
    a = 2 if tight else 3
    lists = random_lists(rng, shape.num_vertices, a, a + 1)
    v = rng.randrange(shape.num_vertices)
    inst = Instance(shape, lists, b, Anchor(v, frozenset([min(lists[v])])))
    dp = feasible(inst)
    bt = backtrack_feasible(inst, budget=None)
    assert dp.feasible == bt.feasible
    if dp.feasible:
        assert validate_coloring(inst, dp.witness) == []


def test_tree_dp_on_binocular():
    rng = random.Random(5)
    shape = binocular(4, 6, 2)
    for _ in range(20):
        lists = random_lists(rng, shape.num_vertices, 5)
        inst = Instance(shape, lists, 2, Anchor(0, frozenset(sorted(lists[0])[:2])))
        res = feasible(inst)
        assert res.feasible
        assert validate_coloring(inst, res.witness) == []


def test_backtracking_handles_general_graphs():
    k4 = TreeOfCycles(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
    assert not backtrack_feasible(Instance(k4, (fs(1, 2, 3),) * 4, 1)).feasible
    assert backtrack_feasible(Instance(k4, (fs(1, 2, 3, 4),) * 4, 1)).feasible


def test_subsets_are_lexicographic():
    assert subsets(fs(3, 1, 2), 2) == [fs(1, 2), fs(1, 3), fs(2, 3)]
