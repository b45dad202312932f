"""Converging and convex linear orders on the vertices of a finite tree.

An order is *converging* when no three points on a line read
``x1 < x3 < x2`` in geometric order, and *convex* when no four points on a
line read ``x2 < x3 < x1 < x4``.  Lines are read in both directions.  A
decorated tree with pointed linear orders at its vertices projects to such
an order through :func:`pi_order`, and :func:`realize_cclo` goes back.
"""
from __future__ import annotations

from functools import cached_property, cmp_to_key, lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .decorated import DecoratedTree
from .errors import InputError, KaleidoError
from .relstruct import LT, POINTED_LO_AGE, POINTED_LO_SIGNATURE, RelStructure
from .trees import RootedTree, Tree, between, insert_between

__all__ = [
    "TreeLinearOrder",
    "is_converging",
    "is_convex",
    "is_cclo",
    "is_convex_duchesne",
    "enumerate_cclo",
    "pi_order",
    "realize_cclo",
    "collapse_pair",
    "configuration",
    "five_point_violations",
    "component_order_violations",
    "DEFAULT_BOUND",
]

DEFAULT_BOUND = 8


class TreeLinearOrder:
    """A strict total order on the vertices of ``t``, stored as a sequence
    from least to greatest."""

    def __init__(self, t: Tree, order: Sequence[int] | Mapping[int, int]):
        if isinstance(order, Mapping):
            if set(order) != set(t.vertices):
                raise InputError("ranks must cover exactly the tree's vertices")
            if len(set(order.values())) != len(order):
                raise InputError("ranks must be distinct")
            seq = tuple(sorted(order, key=lambda v: order[v]))
        else:
            seq = tuple(order)
            if sorted(seq) != sorted(t.vertices) or len(set(seq)) != len(seq):
                raise InputError("sequence must list every vertex exactly once")
        self.t = t
        self.sequence = seq

    @cached_property
    def rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.sequence)}

    def lt(self, x: int, y: int) -> bool:
        return self.rank[x] < self.rank[y]

    def restrict(self, verts: Iterable[int], t: Tree) -> "TreeLinearOrder":
        keep = set(verts)
        return TreeLinearOrder(t, [v for v in self.sequence if v in keep])

    def __eq__(self, other) -> bool:
        return isinstance(other, TreeLinearOrder) and self.t == other.t and self.sequence == other.sequence

    def __hash__(self) -> int:
        return hash((self.t, self.sequence))

    def __repr__(self) -> str:
        return "TreeLinearOrder(" + " < ".join(map(str, self.sequence)) + ")"


# -- collinear patterns ----------------------------------------------------------


@lru_cache(maxsize=256)
def _lines3(t: Tree) -> tuple[tuple[int, int, int], ...]:
    """Ordered triples of distinct vertices with the middle one between the others."""
    vs = t.vertices
    return tuple(
        (x, y, z)
        for x in vs
        for z in vs
        if x != z
        for y in t.path(x, z)[1:-1]
    )


@lru_cache(maxsize=256)
def _lines4(t: Tree) -> tuple[tuple[int, int, int, int], ...]:
    """Ordered quadruples of distinct vertices lying on a path in that order."""
    out = []
    vs = t.vertices
    for x in vs:
        for w in vs:
            if x == w:
                continue
            inner = t.path(x, w)[1:-1]
            for i in range(len(inner)):
                for j in range(i + 1, len(inner)):
                    out.append((x, inner[i], inner[j], w))
    return tuple(sorted(out))


def is_converging(o: TreeLinearOrder) -> tuple[bool, tuple[int, int, int] | None]:
    """No line ``x1, x2, x3`` (in this geometric order) has ``x1 < x3 < x2``."""
    r = o.rank
    for x1, x2, x3 in sorted(_lines3(o.t)):
        if r[x1] < r[x3] < r[x2]:
            return False, (x1, x2, x3)
    return True, None


def is_convex(o: TreeLinearOrder) -> tuple[bool, tuple[int, int, int, int] | None]:
    """No line ``x1, x2, x3, x4`` has ``x2 < x3 < x1 < x4``.  Needs a converging order."""
    if not is_converging(o)[0]:
        raise InputError("convexity is only defined for converging orders")
    r = o.rank
    for x1, x2, x3, x4 in _lines4(o.t):
        if r[x2] < r[x3] < r[x1] < r[x4]:
            return False, (x1, x2, x3, x4)
    return True, None


def is_cclo(o: TreeLinearOrder) -> bool:
    return is_converging(o)[0] and is_convex(o)[0]


def _least_on(o: TreeLinearOrder, x: int, y: int) -> int:
    return min(o.t.path(x, y), key=o.rank.__getitem__)


def is_convex_duchesne(o: TreeLinearOrder) -> bool:
    """Finite reading of the original convexity condition.

    With ``m(x, y)`` the least vertex on ``[x, y]``: whenever ``x <= y``,
    every ``x'`` on ``[x, m)`` and ``y'`` on ``(m, y]`` satisfy ``x' <= y'``.
    """
    if not is_converging(o)[0]:
        raise InputError("convexity is only defined for converging orders")
    r = o.rank
    for x in o.t.vertices:
        for y in o.t.vertices:
            if r[x] > r[y]:
                continue
            m = _least_on(o, x, y)
            left = o.t.path(x, m)[:-1]
            right = o.t.path(m, y)[1:]
            if any(r[a] > r[b] for a in left for b in right):
                return False
    return True


def enumerate_cclo(t: Tree, bound: int = DEFAULT_BOUND) -> list[TreeLinearOrder]:
    """Every converging convex order on ``t``, in lexicographic order of sequences."""
    n = len(t)
    if n > bound:
        raise InputError(f"tree has {n} vertices, above the enumeration bound {bound}")
    vs = list(t.vertices)
    pos = {v: i for i, v in enumerate(vs)}
    perms = np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)
    ranks = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    ranks[rows, perms] = np.arange(n, dtype=np.int8)
    keep = np.ones(len(perms), dtype=bool)
    l3 = np.array([[pos[v] for v in tri] for tri in _lines3(t)], dtype=np.intp).reshape(-1, 3)
    if len(l3):
        r1, r2, r3 = ranks[:, l3[:, 0]], ranks[:, l3[:, 1]], ranks[:, l3[:, 2]]
        keep &= ~((r1 < r3) & (r3 < r2)).any(axis=1)
    l4 = np.array([[pos[v] for v in q] for q in _lines4(t)], dtype=np.intp).reshape(-1, 4)
    if len(l4):
        sub = ranks[keep]
        r1, r2, r3, r4 = (sub[:, l4[:, i]] for i in range(4))
        ok = ~((r2 < r3) & (r3 < r1) & (r1 < r4)).any(axis=1)
        idx = np.flatnonzero(keep)
        keep[idx[~ok]] = False
    return [TreeLinearOrder(t, [vs[i] for i in p]) for p in perms[keep]]


# -- five-point patterns ------------------------------------------------------------


@lru_cache(maxsize=64)
def _quintuples(t: Tree) -> np.ndarray:
    """``(z1, y1, x, y2, z2)`` on a line in this order, ``x, y1, y2`` distinct.

    ``z1`` may equal ``y1`` and ``z2`` may equal ``y2``.
    """
    out = []
    vs = t.vertices
    for y1 in vs:
        for y2 in vs:
            if y1 == y2:
                continue
            for x in t.path(y1, y2)[1:-1]:
                z1s = [z for z in vs if between(t, z, y1, x)]
                z2s = [z for z in vs if between(t, x, y2, z)]
                out.extend((z1, y1, x, y2, z2) for z1 in z1s for z2 in z2s)
    return np.array(out, dtype=np.intp).reshape(-1, 5)


@lru_cache(maxsize=64)
def _component_pairs(t: Tree) -> np.ndarray:
    """``(x, y, z1, z2, z1', z2')`` with ``z1, z1'`` and ``z2, z2'`` in two
    different components at ``y`` that avoid ``x``."""
    out = []
    for y in t.vertices:
        groups = {n: [v for v in t.vertices if v != y and t.next_hop(y, v) == n] for n in t.neighbors(y)}
        for x in t.vertices:
            if x == y:
                continue
            avoid = t.next_hop(y, x)
            sides = [g for n, g in groups.items() if n != avoid]
            for i, a1 in enumerate(sides):
                for j, a2 in enumerate(sides):
                    if i == j:
                        continue
                    out.extend((x, y, z1, z2, w1, w2) for z1 in a1 for w1 in a1 for z2 in a2 for w2 in a2)
    return np.array(out, dtype=np.intp).reshape(-1, 6)


def _rank_rows(orders: Sequence[TreeLinearOrder], t: Tree) -> np.ndarray:
    n = max(t.vertices) + 1
    out = np.zeros((len(orders), n), dtype=np.int16)
    for i, o in enumerate(orders):
        for v, r in o.rank.items():
            out[i, v] = r
    return out


def five_point_violations(t: Tree, orders: Sequence[TreeLinearOrder]) -> list[tuple[int, tuple[int, ...]]]:
    """Lines ``z1, y1, x, y2, z2`` with ``x < y1 < y2`` but not ``z1 < z2``.

    Returns ``(order index, quintuple)`` for every violating order (first
    quintuple only).
    """
    q = _quintuples(t)
    if not len(orders) or not len(q):
        return []
    r = _rank_rows(orders, t)
    z1, y1, x, y2, z2 = (r[:, q[:, i]] for i in range(5))
    bad = (x < y1) & (y1 < y2) & ~(z1 < z2)
    out = []
    for i in np.flatnonzero(bad.any(axis=1)):
        out.append((int(i), tuple(int(v) for v in q[np.argmax(bad[i])])))
    return out


def component_order_violations(t: Tree, orders: Sequence[TreeLinearOrder]) -> list[tuple[int, tuple[int, ...]]]:
    """Cases ``x < y``, ``z1 < z2`` but ``z1' > z2'`` with ``z1, z1'`` and
    ``z2, z2'`` in distinct components at ``y`` not containing ``x``."""
    q = _component_pairs(t)
    if not len(orders) or not len(q):
        return []
    r = _rank_rows(orders, t)
    x, y, z1, z2, w1, w2 = (r[:, q[:, i]] for i in range(6))
    bad = (x < y) & (z1 < z2) & (w1 > w2)
    out = []
    for i in np.flatnonzero(bad.any(axis=1)):
        out.append((int(i), tuple(int(v) for v in q[np.argmax(bad[i])])))
    return out


# -- configurations and the pi map ----------------------------------------------


def configuration(rt: RootedTree, orders: Mapping[int, Sequence[int]]) -> DecoratedTree:
    """Decorated tree whose decoration at ``v`` is the linear order
    ``orders[v]`` on the neighbors of ``v``, parent first.

    Leaves may be omitted.
    """
    decs = {}
    for v, seq in orders.items():
        seq = list(seq)
        pairs = [(seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq))]
        decs[v] = RelStructure(POINTED_LO_SIGNATURE, seq, {LT: pairs}, rt.parent[v])
    return DecoratedTree(rt, POINTED_LO_SIGNATURE, decs, age=POINTED_LO_AGE)


def _check_configuration(cfg: DecoratedTree) -> None:
    if cfg.signature != POINTED_LO_SIGNATURE:
        raise InputError("configurations use the pointed linear order alphabet")
    for v, d in cfg.decorations.items():
        bad = POINTED_LO_AGE.violation(d)
        if bad is not None:
            raise InputError(f"decoration at {v} is not a pointed linear order: {bad}")


def pi_order(cfg: DecoratedTree, check: bool = True) -> TreeLinearOrder:
    """Order on the non-root vertices: ``x < y`` when ``x`` is below ``y``,
    or when at ``w = x ∧ y`` the component towards ``x`` precedes the one
    towards ``y``.

    The result lives on the tree with the root removed.  With ``check`` the
    output is verified to be converging and convex.
    """
    _check_configuration(cfg)
    rt = cfg.rt
    tree = rt.tree

    def cmp(x: int, y: int) -> int:
        if x == y:
            return 0
        w = rt.meet(x, y)
        if w == x:
            return -1
        if w == y:
            return 1
        d = cfg.decoration(w)
        return -1 if d.holds(LT, (tree.next_hop(w, x), tree.next_hop(w, y))) else 1

    verts = [v for v in rt.vertices if v != rt.root]
    seq = sorted(verts, key=cmp_to_key(cmp))
    keep = set(verts)
    sub = Tree(verts, [e for e in tree.edges if set(e) <= keep])
    o = TreeLinearOrder(sub, seq)
    if check and not is_cclo(o):
        raise KaleidoError("pi produced an order that is not converging and convex")
    return o


def _neighbor_orders(t: Tree, parent_dir: Mapping[int, int], rank: Mapping[int, int]) -> dict[int, list[int]]:
    # parent direction first, then the other neighbors by rank
    out = {}
    for v, p in parent_dir.items():
        rest = sorted((n for n in t.neighbors(v) if n != p), key=rank.__getitem__)
        out[v] = [p] + rest
    return out


def realize_cclo(t: Tree, o: TreeLinearOrder) -> DecoratedTree:
    """Configuration whose pi order restricts to ``o`` on ``t``.

    ``x0`` is the least vertex and ``x1`` its greatest neighbor.  A fresh
    vertex ``w`` subdivides ``x0 - x1`` and the fresh root hangs off ``w``;
    at ``w`` the order is root, ``x0``, ``x1``.  Every original vertex puts
    its parent direction first and then its other neighbors by rank.
    """
    if o.t != t:
        raise InputError("the order lives on a different tree")
    if not is_cclo(o):
        raise InputError("the order is not converging and convex")
    x0 = o.sequence[0]
    if len(t) == 1:
        xi = x0 + 1
        rt = RootedTree(Tree([x0, xi], [(x0, xi)]), xi)
        return configuration(rt, {x0: [xi]})
    x1 = max(t.neighbors(x0), key=o.rank.__getitem__)
    t2, w = insert_between(t, x0, x1)
    xi = w + 1
    t3 = Tree(list(t2.vertices) + [xi], list(t2.edges) + [(w, xi)])
    rt = RootedTree(t3, xi)
    rank = dict(o.rank)
    rank[w] = -1
    orders = _neighbor_orders(t3, {v: rt.parent[v] for v in t.vertices}, rank)
    orders[w] = [xi, x0, x1]
    return configuration(rt, orders)


def collapse_pair(t: Tree, x0: int, x1: int) -> tuple[DecoratedTree, DecoratedTree]:
    """Two different configurations with the same pi order on ``t``.

    ``q1`` roots at a fresh ``w`` between ``x0`` and ``x1`` ordered root,
    ``x0``, ``x1``; ``q2`` roots at a fresh leaf of ``x0`` and ranks the
    component towards ``x1`` last at ``x0``.  Elsewhere both put the parent
    direction first and the remaining neighbors by id.
    """
    if not t.adjacent(x0, x1):
        raise InputError("x0 and x1 must be adjacent")
    by_id = {v: v for v in t.vertices}

    t2, w = insert_between(t, x0, x1)
    xi1 = max(t2.vertices) + 1
    rt1 = RootedTree(Tree(list(t2.vertices) + [xi1], list(t2.edges) + [(w, xi1)]), xi1)
    rank1 = dict(by_id)
    rank1[w] = -1
    o1 = _neighbor_orders(rt1.tree, {v: rt1.parent[v] for v in t.vertices}, rank1)
    o1[w] = [xi1, x0, x1]
    q1 = configuration(rt1, o1)

    xi2 = max(t.vertices) + 1
    rt2 = RootedTree(Tree(list(t.vertices) + [xi2], list(t.edges) + [(x0, xi2)]), xi2)
    rank2 = dict(by_id)
    rank2[x1] = max(t.vertices) + 2
    o2 = _neighbor_orders(rt2.tree, {v: rt2.parent[v] for v in t.vertices}, rank2)
    q2 = configuration(rt2, o2)
    return q1, q2
