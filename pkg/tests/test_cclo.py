from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaleido.cclo import (
    TreeLinearOrder,
    collapse_pair,
    component_order_violations,
    configuration,
    enumerate_cclo,
    five_point_violations,
    is_cclo,
    is_converging,
    is_convex,
    is_convex_duchesne,
    pi_order,
    realize_cclo,
)
from kaleido.errors import InputError
from kaleido.trees import RootedTree, Tree, nonisomorphic_trees, path_tree, star_tree

from conftest import rooted_trees, trees
from oracles import naive_cclo_count


@pytest.mark.parametrize(
    "t, count",
    [(path_tree(1), 1), (path_tree(2), 2), (path_tree(3), 4), (path_tree(5), 8), (star_tree(3), 12), (star_tree(4), 48)],
    ids=["p1", "p2", "p3", "p5", "k13", "k14"],
)
def test_known_counts(t, count):
    assert len(enumerate_cclo(t)) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_counts_match_filter_oracle(n):
    for t in nonisomorphic_trees(n):
        assert len(enumerate_cclo(t)) == naive_cclo_count(t.vertices, t.edges)


def test_path_orders_spread_from_an_end():
    # on a path each CCLO grows outward from its least element
    for o in enumerate_cclo(path_tree(4)):
        seen = {o.sequence[0]}
        for v in o.sequence[1:]:
            assert any(abs(v - u) == 1 for u in seen)
            seen.add(v)


def test_pattern_witnesses():
    p = path_tree(3)
    ok, w = is_converging(TreeLinearOrder(p, [0, 2, 1]))
    assert not ok and set(w) == {0, 1, 2}
    with pytest.raises(InputError):
        is_convex(TreeLinearOrder(p, [0, 2, 1]))
    ok, w = is_convex(TreeLinearOrder(path_tree(4), [1, 2, 0, 3]))
    assert not ok and w is not None


def test_order_validation():
    with pytest.raises(InputError):
        TreeLinearOrder(path_tree(3), [0, 1])
    with pytest.raises(InputError):
        TreeLinearOrder(path_tree(2), {0: 1, 1: 1})


def test_enumeration_bound():
    with pytest.raises(InputError):
        enumerate_cclo(path_tree(9), bound=8)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_five_point_and_component_patterns(n):
    for t in nonisomorphic_trees(n):
        orders = enumerate_cclo(t)
        assert five_point_violations(t, orders) == []
        assert component_order_violations(t, orders) == []


@settings(max_examples=40)
@given(trees(1, 6), st.data())
def test_round_trip(t, data):
    o = data.draw(st.sampled_from(enumerate_cclo(t)))
    cfg = realize_cclo(t, o)
    back = pi_order(cfg)
    assert [v for v in back.sequence if v in t] == list(o.sequence)


@settings(max_examples=40)
@given(rooted_trees(2, 8), st.data())
def test_pi_of_any_configuration_is_a_cclo(rt, data):
    orders = {}
    for v in rt.bfs_order[1:]:
        kids = data.draw(st.permutations(list(rt.children(v))))
        orders[v] = [rt.parent[v]] + list(kids)
    o = pi_order(configuration(rt, orders), check=False)
    assert is_cclo(o)
    # the least vertex is r, and every vertex comes after its parent
    assert o.sequence[0] == rt.r
    assert all(o.lt(p, v) for v, p in rt.parent.items() if p != rt.root)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_collapse_pairs(n):
    for t in nonisomorphic_trees(n):
        for x0, x1 in t.edges:
            for a, b in ((x0, x1), (x1, x0)):
                q1, q2 = collapse_pair(t, a, b)
                assert q1 != q2
                o1, o2 = pi_order(q1), pi_order(q2)
                keep = set(t.vertices)
                assert [v for v in o1.sequence if v in keep] == [v for v in o2.sequence if v in keep]


def test_collapse_needs_an_edge():
    with pytest.raises(InputError):
        collapse_pair(path_tree(3), 0, 2)


def test_realize_rejects_bad_orders():
    p = path_tree(3)
    with pytest.raises(InputError):
        realize_cclo(p, TreeLinearOrder(p, [0, 2, 1]))
    with pytest.raises(InputError):
        realize_cclo(path_tree(2), TreeLinearOrder(p, [0, 1, 2]))


def test_single_vertex_realization():
    t = Tree([5])
    cfg = realize_cclo(t, TreeLinearOrder(t, [5]))
    assert isinstance(cfg.rt, RootedTree) and cfg.r == 5
    assert pi_order(cfg).sequence == (5,)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_duchesne_variant_matches_the_pattern_definition(n):
    # observed agreement on every converging order of every small tree
    for t in nonisomorphic_trees(n):
        for seq in permutations(t.vertices):
            o = TreeLinearOrder(t, seq)
            if is_converging(o)[0]:
                assert is_convex_duchesne(o) == is_convex(o)[0], seq


def test_duchesne_variant_needs_converging_orders():
    p = path_tree(3)
    with pytest.raises(InputError):
        is_convex_duchesne(TreeLinearOrder(p, [0, 2, 1]))
