from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kaleido.errors import InputError
from kaleido.trees import (
    Component,
    RootedTree,
    Tree,
    between,
    component_of,
    generated_subtree,
    insert_between,
    median,
    nonisomorphic_trees,
    path_tree,
    star_tree,
    tree_automorphisms,
)

from conftest import rooted_trees, trees
from oracles import adjacency, brute_median, side


def test_path_and_star_shapes():
    p = path_tree(4)
    assert p.edges == ((0, 1), (1, 2), (2, 3))
    assert p.path(0, 3) == [0, 1, 2, 3]
    s = star_tree(3)
    assert s.degree(0) == 3
    assert median(s, 1, 2, 3) == 0


@pytest.mark.parametrize(
    "verts, edges",
    [
        ([], []),
        ([0, 0], [(0, 0)]),
        ([0, 1, 2], [(0, 1)]),
        ([0, 1, 2], [(0, 1), (1, 2), (2, 0)]),
        ([0, 1], [(0, 5)]),
    ],
)
def test_malformed_trees_are_rejected(verts, edges):
    with pytest.raises(InputError):
        Tree(verts, edges)


def test_root_must_be_a_leaf():
    with pytest.raises(InputError):
        RootedTree(star_tree(3), 0)


@given(trees(max_n=9), st.data())
def test_median_matches_bfs_oracle(t, data):
    adj = adjacency(t.vertices, t.edges)
    x, y, z = (data.draw(st.sampled_from(t.vertices)) for _ in range(3))
    assert median(t, x, y, z) == brute_median(adj, x, y, z)


@given(trees(max_n=8), st.data())
def test_median_is_symmetric_and_idempotent(t, data):
    x, y, z = (data.draw(st.sampled_from(t.vertices)) for _ in range(3))
    m = median(t, x, y, z)
    assert all(median(t, *p) == m for p in permutations((x, y, z)))
    assert median(t, x, x, y) == x


@given(trees(max_n=8), st.data())
def test_betweenness_laws(t, data):
    x, y, z = (data.draw(st.sampled_from(t.vertices)) for _ in range(3))
    assert between(t, x, y, z) == (y in t.path(x, z))
    assert between(t, x, y, z) == between(t, z, y, x)
    if between(t, x, y, z) and between(t, x, z, y):
        assert y == z


@given(rooted_trees(max_n=9), st.data())
def test_meet_is_the_median_with_the_root(rt, data):
    x, y, z = (data.draw(st.sampled_from(rt.vertices)) for _ in range(3))
    m = rt.meet(x, y)
    assert m == median(rt.tree, x, y, rt.root)
    assert rt.meet(y, x) == m
    assert rt.meet(x, rt.meet(y, z)) == rt.meet(rt.meet(x, y), z)
    assert rt.leq(m, x) and rt.leq(m, y)
    assert rt.leq(rt.root, x)


@given(rooted_trees(max_n=9))
def test_heights_and_parent(rt):
    assert rt.height(rt.root) == 0
    if len(rt) > 1:
        assert rt.height(rt.r) == 1
        assert rt.parent[rt.r] == rt.root
    for v, p in rt.parent.items():
        assert rt.height(v) == rt.height(p) + 1
        assert rt.rho(v) == Component(v, p)


@given(trees(min_n=2, max_n=8), st.data())
def test_components_partition_the_rest(t, data):
    v = data.draw(st.sampled_from(t.vertices))
    adj = adjacency(t.vertices, t.edges)
    for y in t.vertices:
        if y == v:
            continue
        c = component_of(t, v, y)
        assert y in side(adj, v, c.direction)


@given(trees(max_n=8), st.data())
def test_generated_subtree_is_median_closed(t, data):
    gens = data.draw(st.lists(st.sampled_from(t.vertices), min_size=1, max_size=3))
    g = generated_subtree(t, gens)
    vs = set(g.vertices)
    assert set(gens) <= vs
    assert all(median(t, a, b, c) in vs for a in vs for b in vs for c in vs)
    # every non-generator has degree at least 3 in the closure
    for v in vs - set(gens):
        assert g.degree(v) >= 3


def test_insert_between():
    t, z = insert_between(path_tree(3), 1, 2)
    assert z == 3
    assert t.path(0, 2) == [0, 1, 3, 2]
    with pytest.raises(InputError):
        insert_between(path_tree(3), 0, 2)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)])
def test_tree_census(n, count):
    assert len(nonisomorphic_trees(n)) == count


@pytest.mark.parametrize("leaves, size", [(2, 2), (3, 6), (4, 24)])
def test_star_automorphisms(leaves, size):
    assert len(tree_automorphisms(star_tree(leaves))) == size


def test_path_automorphisms_are_identity_and_flip():
    autos = tree_automorphisms(path_tree(5))
    assert [a[0] for a in autos] == [0, 4]
