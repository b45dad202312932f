"""Finite combinatorial trees.

A :class:`Tree` is a finite connected acyclic graph on opaque integer vertex
ids.  It carries the ternary median (center) function, the betweenness
relation derived from it and the "component around ``v`` containing ``y``"
map.  A :class:`RootedTree` fixes a root vertex of degree one; the median
with the root gives the meet, which turns the vertex set into a meet
semilattice with the root at the bottom.

All objects are immutable after construction.
"""
from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import InputError

__all__ = [
    "Component",
    "Tree",
    "RootedTree",
    "median",
    "between",
    "meet",
    "component_of",
    "generated_subtree",
    "generated_rooted",
    "insert_between",
    "tree_automorphisms",
    "nonisomorphic_trees",
    "path_tree",
    "star_tree",
]


class Component(NamedTuple):
    """The class of ``tree - {anchor}`` containing the neighbor ``direction``."""

    anchor: int
    direction: int


class Tree:
    """Finite tree given by its vertices and edges."""

    __slots__ = ("_adj", "__dict__")

    def __init__(self, vertices: Iterable[int], edges: Iterable[Iterable[int]] = ()):
        verts = [int(v) for v in vertices]
        if not verts:
            raise InputError("a tree needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertex ids")
        adj: dict[int, set[int]] = {v: set() for v in verts}
        n_edges = 0
        for e in edges:
            x, y = (int(u) for u in e)
            if x not in adj or y not in adj:
                raise InputError(f"edge ({x}, {y}) mentions an unknown vertex")
            if x == y:
                raise InputError(f"self-loop at {x}")
            if y in adj[x]:
                raise InputError(f"duplicate edge ({x}, {y})")
            adj[x].add(y)
            adj[y].add(x)
            n_edges += 1
        if n_edges != len(verts) - 1:
            raise InputError("edge count does not match a tree")
        seen = {verts[0]}
        todo = [verts[0]]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(verts):
            raise InputError("graph is not connected")
        self._adj = {v: tuple(sorted(adj[v])) for v in sorted(adj)}

    # -- basic access -----------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((x, y) for x in self._adj for y in self._adj[x] if x < y))

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, x: int, y: int) -> bool:
        self._check(x, y)
        return y in self._adj[x]

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and type(other) is Tree and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Tree(vertices={list(self.vertices)}, edges={[list(e) for e in self.edges]})"

    def _check(self, *vs: int) -> None:
        for v in vs:
            if v not in self._adj:
                raise InputError(f"unknown vertex {v!r}")

    # -- metric data ------------------------------------------------------

    @cached_property
    def _hops(self) -> dict[int, dict[int, int]]:
        # _hops[x][y]: neighbor of x on the path to y (x != y)
        table: dict[int, dict[int, int]] = {}
        for x in self._adj:
            row: dict[int, int] = {}
            for n in self._adj[x]:
                row[n] = n
                todo = deque([n])
                while todo:
                    v = todo.popleft()
                    for w in self._adj[v]:
                        if w != x and w not in row:
                            row[w] = n
                            todo.append(w)
            table[x] = row
        return table

    def next_hop(self, x: int, y: int) -> int:
        """Neighbor of ``x`` on the path from ``x`` to ``y``."""
        self._check(x, y)
        if x == y:
            raise InputError("next_hop needs distinct vertices")
        return self._hops[x][y]

    def path(self, x: int, y: int) -> list[int]:
        """Vertices of the path from ``x`` to ``y``, endpoints included."""
        self._check(x, y)
        out = [x]
        while x != y:
            x = self._hops[x][y]
            out.append(x)
        return out

    def distance(self, x: int, y: int) -> int:
        return len(self.path(x, y)) - 1


def path_tree(n: int, start: int = 0) -> Tree:
    """Path ``start - start+1 - ... - start+n-1``."""
    vs = list(range(start, start + n))
    return Tree(vs, zip(vs, vs[1:]))


def star_tree(leaves: int, center: int = 0) -> Tree:
    vs = [center] + [center + 1 + i for i in range(leaves)]
    return Tree(vs, [(center, v) for v in vs[1:]])


def median(t: Tree, x: int, y: int, z: int) -> int:
    """The unique vertex lying on all three pairwise paths among x, y, z."""
    common = set(t.path(x, y)) & set(t.path(y, z)) & set(t.path(x, z))
    (m,) = common
    return m


def between(t: Tree, x: int, y: int, z: int) -> bool:
    """Betweenness: ``y`` lies on the path from ``x`` to ``z``."""
    return median(t, x, y, z) == y


def component_of(t: Tree, v: int, y: int) -> Component:
    if v == y:
        raise InputError("component_of needs y != v")
    return Component(v, t.next_hop(v, y))


def _closure(t: Tree, gens: Iterable[int]) -> set[int]:
    closed = set(gens)
    if not closed:
        raise InputError("empty generator set")
    t._check(*closed)
    while True:
        new = {median(t, a, b, c) for a, b, c in combinations(sorted(closed), 3)} - closed
        if not new:
            return closed
        closed |= new


def _induced_edges(t: Tree, verts: set[int]) -> list[tuple[int, int]]:
    edges = []
    for x, y in combinations(sorted(verts), 2):
        inner = t.path(x, y)[1:-1]
        if not any(v in verts for v in inner):
            edges.append((x, y))
    return edges


def generated_subtree(t: Tree, gens: Iterable[int]) -> Tree:
    """Median closure of ``gens`` as a tree in its own right.

    Two closure vertices are adjacent in the result when no closure vertex
    lies strictly between them.
    """
    closed = _closure(t, gens)
    return Tree(sorted(closed), _induced_edges(t, closed))


def insert_between(t: Tree, x: int, y: int) -> tuple[Tree, int]:
    """Subdivide the edge ``x - y`` with a fresh vertex.

    Fresh ids are ``max(vertices) + 1`` so repeated edits never reuse an id.
    """
    if not t.adjacent(x, y):
        raise InputError(f"{x} and {y} are not adjacent")
    z = max(t.vertices) + 1
    edges = [e for e in t.edges if set(e) != {x, y}] + [(x, z), (z, y)]
    return Tree(t.vertices + (z,), edges), z


class RootedTree:
    """A tree with a distinguished root of degree at most one.

    Stored as a parent map; the meet is the lowest common ancestor, which
    coincides with ``median(x, y, root)``.
    """

    __slots__ = ("tree", "root", "__dict__")

    def __init__(self, tree: Tree, root: int):
        if root not in tree:
            raise InputError(f"root {root!r} is not a vertex")
        if len(tree) > 1 and tree.degree(root) != 1:
            raise InputError("the root must have exactly one neighbor")
        self.tree = tree
        self.root = root

    @classmethod
    def from_parents(cls, root: int, parents: dict[int, int]) -> "RootedTree":
        verts = [root] + sorted(parents)
        return cls(Tree(verts, [(c, p) for c, p in parents.items()]), root)

    @cached_property
    def parent(self) -> dict[int, int]:
        par: dict[int, int] = {}
        todo = deque([self.root])
        while todo:
            v = todo.popleft()
            for w in self.tree.neighbors(v):
                if w != self.root and w not in par:
                    par[w] = v
                    todo.append(w)
        return par

    @cached_property
    def _depth(self) -> dict[int, int]:
        depth = {self.root: 0}
        for v in self.bfs_order[1:]:
            depth[v] = depth[self.parent[v]] + 1
        return depth

    @cached_property
    def bfs_order(self) -> tuple[int, ...]:
        """Vertices with parents before children, siblings ascending."""
        out = [self.root]
        i = 0
        while i < len(out):
            out.extend(self.children(out[i]))
            i += 1
        return tuple(out)

    @cached_property
    def _children(self) -> dict[int, tuple[int, ...]]:
        kids: dict[int, list[int]] = {v: [] for v in self.tree.vertices}
        for c, p in self.parent.items():
            kids[p].append(c)
        return {v: tuple(sorted(k)) for v, k in kids.items()}

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.tree.vertices

    def __len__(self) -> int:
        return len(self.tree)

    def __contains__(self, v) -> bool:
        return v in self.tree

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedTree) and self.root == other.root and self.tree == other.tree

    def __hash__(self) -> int:
        return hash((self.tree, self.root))

    def __repr__(self) -> str:
        return f"RootedTree(root={self.root}, parents={dict(sorted(self.parent.items()))})"

    def children(self, v: int) -> tuple[int, ...]:
        """Immediate successors of ``v``."""
        self.tree._check(v)
        return self._children[v]

    succ = children

    @property
    def r(self) -> int | None:
        """The unique immediate successor of the root (``None`` for a single vertex)."""
        kids = self._children[self.root]
        return kids[0] if kids else None

    def height(self, v: int) -> int:
        """Number of strict predecessors of ``v``."""
        self.tree._check(v)
        return self._depth[v]

    @cached_property
    def tree_height(self) -> int:
        return max(self._depth.values())

    def is_leaf(self, v: int) -> bool:
        return v != self.root and not self.children(v)

    def ancestors(self, v: int) -> list[int]:
        """Path from ``v`` down to the root, ``v`` included."""
        self.tree._check(v)
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out

    def meet(self, x: int, y: int) -> int:
        self.tree._check(x, y)
        dx, dy = self._depth[x], self._depth[y]
        while dx > dy:
            x = self.parent[x]
            dx -= 1
        while dy > dx:
            y = self.parent[y]
            dy -= 1
        while x != y:
            x, y = self.parent[x], self.parent[y]
        return x

    def leq(self, x: int, y: int) -> bool:
        """``x`` precedes-or-equals ``y`` in the tree order."""
        return self.meet(x, y) == x

    def rho(self, v: int) -> Component:
        """Component around ``v`` containing the root."""
        if v == self.root:
            raise InputError("the root has no parent component")
        return Component(v, self.parent[v])

    def subtree_vertices(self, t: int) -> list[int]:
        """``{s : t <= s}`` together with the root, in BFS order."""
        out = [t]
        i = 0
        while i < len(out):
            out.extend(self.children(out[i]))
            i += 1
        return [self.root] + out if t != self.root else out

    def component_members(self, comp: Component) -> list[int]:
        v, n = comp
        return sorted(y for y in self.vertices if y != v and self.tree.next_hop(v, y) == n)


def meet(rt: RootedTree, x: int, y: int) -> int:
    return rt.meet(x, y)


def generated_rooted(rt: RootedTree, gens: Iterable[int]) -> RootedTree:
    """Closure of ``gens`` together with the root, as a rooted tree."""
    closed = _closure(rt.tree, set(gens) | {rt.root})
    return RootedTree(Tree(sorted(closed), _induced_edges(rt.tree, closed)), rt.root)


def tree_automorphisms(t: Tree) -> list[dict[int, int]]:
    """All adjacency-preserving bijections, in lexicographic order of images."""
    verts = t.vertices
    deg = {v: t.degree(v) for v in verts}
    out: list[dict[int, int]] = []
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> None:
        if i == len(verts):
            out.append(dict(image))
            return
        v = verts[i]
        for w in verts:
            if w in used or deg[w] != deg[v]:
                continue
            if all(t.adjacent(v, u) == t.adjacent(w, image[u]) for u in verts[:i]):
                image[v] = w
                used.add(w)
                extend(i + 1)
                used.discard(w)
                del image[v]

    extend(0)
    return out


def nonisomorphic_trees(n: int) -> list[Tree]:
    """One representative per isomorphism class of trees on ``n`` vertices."""
    if n < 1:
        raise InputError("n must be positive")
    if n == 1:
        return [Tree([0])]
    if n == 2:
        return [path_tree(2)]
    import networkx as nx

    return [Tree(range(n), g.edges()) for g in nx.nonisomorphic_trees(n)]
