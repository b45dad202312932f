"""Decorated rooted trees and their embeddings.

A decorated tree is a rooted tree in which every vertex ``v`` other than the
root carries a relational structure whose universe is the set of components
around ``v`` (each written as the neighbor of ``v`` in that direction) and
whose constant is the parent direction.  The regular trees ``A[h]`` built by
:func:`build_Ah` form a cofinal family among these objects.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Mapping

from .errors import InputError
from .relstruct import (
    POINTED_LO_AGE,
    POINTED_LO_SIGNATURE,
    RelStructure,
    Signature,
    amalgamate,
    struct_embeddings,
)
from .trees import RootedTree, Tree, generated_rooted, median

__all__ = [
    "DecoratedTree",
    "DecEmbedding",
    "build_Ah",
    "ah_layout",
    "dec_embeddings",
    "dec_automorphisms",
    "dec_generated",
    "induced_substructure",
    "embed_into_Ah",
    "is_dec_embedding",
    "level_counts",
    "default_age",
]


def default_age(signature: Signature):
    """Age constraint used when none is supplied."""
    if signature == POINTED_LO_SIGNATURE:
        return POINTED_LO_AGE
    return None


class DecoratedTree:
    """Rooted tree with a relational structure on the components of each vertex.

    ``decorations[v]`` has universe ``neighbors(v)`` and constant
    ``parent(v)``.  Leaves may be omitted, in which case they receive the
    one-point structure with no tuples.  Nothing is stored at the root.
    """

    def __init__(
        self,
        rt: RootedTree,
        signature: Signature,
        decorations: Mapping[int, RelStructure] | None = None,
        age=None,
    ):
        if not signature.has_constant:
            raise InputError("decoration signature needs the constant symbol")
        decorations = dict(decorations or {})
        if rt.root in decorations:
            raise InputError("the root carries no decoration")
        full: dict[int, RelStructure] = {}
        for v in rt.bfs_order[1:]:
            nb = rt.tree.neighbors(v)
            dec = decorations.pop(v, None)
            if dec is None:
                if len(nb) != 1:
                    raise InputError(f"missing decoration at internal vertex {v}")
                dec = RelStructure(signature, nb, {}, nb[0])
            if dec.signature != signature:
                raise InputError(f"decoration at {v} has the wrong signature")
            if set(dec.universe) != set(nb):
                raise InputError(f"decoration at {v} must live on its components {list(nb)}")
            if dec.constant != rt.parent[v]:
                raise InputError(f"decoration at {v} must have the parent direction as constant")
            if age is not None:
                bad = age.violation(dec)
                if bad is not None:
                    raise InputError(f"decoration at {v} violates {age!r}: {bad}")
            full[v] = dec
        if decorations:
            raise InputError(f"decorations for unknown vertices {sorted(decorations)}")
        self.rt = rt
        self.signature = signature
        self.decorations = full

    # -- accessors --------------------------------------------------------

    @property
    def tree(self) -> Tree:
        return self.rt.tree

    @property
    def root(self) -> int:
        return self.rt.root

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.rt.vertices

    @property
    def r(self) -> int | None:
        return self.rt.r

    def __len__(self) -> int:
        return len(self.rt)

    def decoration(self, v: int) -> RelStructure:
        return self.decorations[v]

    def height(self) -> int:
        return self.rt.tree_height

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DecoratedTree)
            and self.rt == other.rt
            and self.signature == other.signature
            and self.decorations == other.decorations
        )

    def __hash__(self) -> int:
        return hash((self.rt, self.signature, tuple(sorted(self.decorations.items()))))

    def __repr__(self) -> str:
        return f"DecoratedTree({self.rt!r}, {len(self.decorations)} decorations)"

    # -- cached data for the embedding search ------------------------------

    @cached_property
    def _nonroot(self) -> tuple[int, ...]:
        return self.rt.bfs_order[1:]

    @cached_property
    def _descendants(self) -> dict[int, tuple[int, ...]]:
        rt = self.rt
        out: dict[int, tuple[int, ...]] = {}
        for v in reversed(rt.bfs_order):
            acc: list[int] = []
            for c in rt.children(v):
                acc.append(c)
                acc.extend(out[c])
            out[v] = tuple(sorted(acc))
        return out

    @cached_property
    def _sub_height(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in reversed(self.rt.bfs_order):
            kids = self.rt.children(v)
            out[v] = 1 + max(out[c] for c in kids) if kids else 0
        return out


def level_counts(dt: DecoratedTree) -> dict[int, int]:
    """Number of vertices at each height."""
    out: dict[int, int] = {}
    for v in dt.vertices:
        h = dt.rt.height(v)
        out[h] = out.get(h, 0) + 1
    return dict(sorted(out.items()))


# -- A[h] ----------------------------------------------------------------------


def ah_layout(a: RelStructure, h: int) -> tuple[dict[int, int], dict[tuple[int, object], int]]:
    """Parent map and child labels of ``A[h]``.

    Returns ``(parents, child_of)`` where ``child_of[(v, e)]`` is the child of
    the internal vertex ``v`` whose component ``v`` labels with the
    non-constant element ``e`` of ``a``.  The root is ``0`` and ``r`` is
    ``1``; the rest is numbered breadth first.
    """
    labels = [e for e in a.universe if e != a.constant]
    parents = {1: 0}
    child_of: dict[tuple[int, object], int] = {}
    level = [1]
    nxt = 2
    for _ in range(h):
        new_level = []
        for v in level:
            for e in labels:
                parents[nxt] = v
                child_of[(v, e)] = nxt
                new_level.append(nxt)
                nxt += 1
        level = new_level
    return parents, child_of


def _build_Ah(a: RelStructure, h: int) -> tuple[DecoratedTree, dict]:
    parents, child_of = ah_layout(a, h)
    rt = RootedTree.from_parents(0, parents)
    point = a.substructure([a.constant])
    decs = {}
    for v in rt.bfs_order[1:]:
        if rt.children(v):
            mapping = {a.constant: parents[v]}
            mapping.update({e: child_of[(v, e)] for e in a.universe if e != a.constant})
            decs[v] = a.rename(mapping)
        else:
            decs[v] = point.rename({a.constant: parents[v]})
    return DecoratedTree(rt, a.signature, decs), child_of


def build_Ah(a: RelStructure, h: int) -> DecoratedTree:
    """The regular tree ``A[h]``: leaves at height ``h+1``, every internal
    non-root vertex has ``|a| - 1`` children whose components realize ``a``."""
    if not a.signature.has_constant:
        raise InputError("the alphabet needs a constant")
    if len(a) < 2 and h > 0:
        raise InputError("A[h] with h > 0 needs an alphabet with at least two elements")
    if h < 0:
        raise InputError("h must be a natural number")
    return _build_Ah(a, h)[0]


# -- embeddings ----------------------------------------------------------------


@dataclass(frozen=True)
class DecEmbedding:
    """Injective vertex map between decorated trees."""

    pairs: tuple[tuple[int, int], ...]
    rooted: bool = False

    @classmethod
    def from_map(cls, f: Mapping[int, int], rooted: bool = False) -> "DecEmbedding":
        return cls(tuple(sorted(f.items())), rooted)

    @cached_property
    def map(self) -> dict[int, int]:
        return dict(self.pairs)

    def __call__(self, v: int) -> int:
        return self.map[v]

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(y for _, y in self.pairs))

    def key(self) -> tuple[int, ...]:
        """Canonical sort key: images of the source vertices in ascending order."""
        return tuple(y for _, y in self.pairs)

    def compose(self, inner: "DecEmbedding") -> "DecEmbedding":
        """``self ∘ inner``."""
        m = self.map
        return DecEmbedding(tuple((x, m[y]) for x, y in inner.pairs), self.rooted and inner.rooted)


def _check_pair(s: DecoratedTree, t: DecoratedTree) -> None:
    if s.signature != t.signature:
        raise InputError("decorated trees have different alphabet signatures")


def is_dec_embedding(f: Mapping[int, int], s: DecoratedTree, t: DecoratedTree, rooted: bool = False) -> bool:
    """Direct check of the embedding conditions.

    Deliberately naive: medians are compared on all triples and the induced
    component map is rebuilt from scratch, so this serves as an oracle for
    :func:`dec_embeddings`.
    """
    _check_pair(s, t)
    if set(f) != set(s.vertices) or not set(f.values()) <= set(t.vertices):
        return False
    if len(set(f.values())) != len(f):
        return False
    if f[s.root] != t.root:
        return False
    if rooted and len(s) > 1 and f[s.r] != t.r:
        return False
    sv = s.vertices
    for x, y, z in product(sv, repeat=3):
        if f[median(s.tree, x, y, z)] != median(t.tree, f[x], f[y], f[z]):
            return False
    for v in sv:
        if v == s.root:
            continue
        fv = f[v]
        comp = {n: t.tree.next_hop(fv, f[n]) for n in s.tree.neighbors(v)}
        # well defined: every vertex of a component lands in the same image component
        for y in sv:
            if y != v and t.tree.next_hop(fv, f[y]) != comp[s.tree.next_hop(v, y)]:
                return False
        if len(set(comp.values())) != len(comp):
            return False
        if comp[s.rt.parent[v]] != t.rt.parent[fv]:
            return False
        ds, dt_ = s.decoration(v), t.decoration(fv)
        for name, k in s.signature.relations:
            for tup in product(ds.universe, repeat=k):
                if ds.holds(name, tup) != dt_.holds(name, tuple(comp[c] for c in tup)):
                    return False
    return True


def dec_embeddings(
    s: DecoratedTree,
    t: DecoratedTree,
    rooted: bool = False,
    limit: int | None = None,
) -> list[DecEmbedding]:
    """All embeddings of ``s`` into ``t`` in canonical order.

    Backtracking over the vertices of ``s`` in breadth-first order.  A vertex
    may only go strictly above the image of its parent, the meet with every
    earlier vertex must be preserved, and decoration tuples are checked as
    soon as all their components have images.  Candidates are pre-filtered by
    subtree height and number of children.

    The canonical order sorts by the images of ``s``'s vertices taken in
    ascending id order.  With ``limit`` the search stops after that many
    embeddings; the returned prefix is then sorted but is not guaranteed to
    be the canonical prefix.
    """
    _check_pair(s, t)
    out: list[DecEmbedding] = []
    if len(s) > len(t):
        return out
    order = s._nonroot
    srt, trt = s.rt, t.rt
    t_nonroot = t._nonroot
    t_desc = t._descendants
    s_hgt, t_hgt = s._sub_height, t._sub_height
    s_kids = {v: len(srt.children(v)) for v in order}
    t_kids = {v: len(trt.children(v)) for v in t.vertices}
    t_hop = t.tree._hops
    rels = [(name, k) for name, k in s.signature.relations]

    f: dict[int, int] = {s.root: t.root}
    used = {t.root}
    # comp_img[v][n]: image component (a t-neighbor of f(v)) of s-component n at v
    comp_img: dict[int, dict[int, int]] = {}
    meets = {(x, y): srt.meet(x, y) for x, y in combinations(order, 2)}
    meets.update({(y, x): m for (x, y), m in list(meets.items())})

    def rel_ok(v: int, new_comp: int) -> bool:
        if not rels:
            return True
        ds, dt_ = s.decorations[v], t.decorations[f[v]]
        img = comp_img[v]
        known = list(img)
        for name, k in rels:
            rs, rt_ = ds.relations[name], dt_.relations[name]
            for tup in product(known, repeat=k):
                if new_comp not in tup:
                    continue
                if (tup in rs) != (tuple(img[c] for c in tup) in rt_):
                    return False
        return True

    def candidates(i: int, v: int) -> Iterable[int]:
        p = srt.parent[v]
        if p == s.root:
            if rooted:
                return (t.r,) if t.r is not None else ()
            return t_nonroot
        return t_desc[f[p]]

    def extend(i: int) -> bool:
        if i == len(order):
            out.append(DecEmbedding.from_map(f, rooted))
            return limit is not None and len(out) >= limit
        v = order[i]
        p = srt.parent[v]
        for w in candidates(i, v):
            if w in used or t_hgt[w] < s_hgt[v] or t_kids[w] < s_kids[v]:
                continue
            ok = True
            for u in order[:i]:
                if trt.meet(w, f[u]) != f[meets[(v, u)]]:
                    ok = False
                    break
            if not ok:
                continue
            f[v] = w
            comp_img[v] = {p: trt.parent[w]}
            good = rel_ok(v, p)
            if good and p != s.root:
                comp_img[p][v] = t_hop[f[p]][w]
                good = rel_ok(p, v)
            if good:
                used.add(w)
                stop = extend(i + 1)
                used.discard(w)
            else:
                stop = False
            if p != s.root:
                comp_img[p].pop(v, None)
            del comp_img[v]
            del f[v]
            if stop:
                return True
        return False

    extend(0)
    out.sort(key=DecEmbedding.key)
    return out


def dec_automorphisms(t: DecoratedTree) -> list[DecEmbedding]:
    """Automorphism group of ``t``; every element fixes the root and ``r``."""
    return dec_embeddings(t, t, rooted=False)


# -- substructures -------------------------------------------------------------


def induced_substructure(t: DecoratedTree, verts: Iterable[int]) -> DecoratedTree:
    """Decorated substructure on a meet-closed vertex set containing the root."""
    keep = set(verts)
    if t.root not in keep:
        raise InputError("substructure must contain the root")
    sub_rt = generated_rooted(t.rt, keep)
    if set(sub_rt.vertices) != keep:
        raise InputError("vertex set is not closed under meets")
    decs = {}
    for v in sub_rt.bfs_order[1:]:
        nb = sub_rt.tree.neighbors(v)
        to_t = {n: t.tree.next_hop(v, n) for n in nb}
        dv = t.decoration(v)
        rels = {
            name: [tup for tup in product(nb, repeat=k) if dv.holds(name, tuple(to_t[c] for c in tup))]
            for name, k in t.signature.relations
        }
        decs[v] = RelStructure(t.signature, nb, rels, sub_rt.parent[v])
    return DecoratedTree(sub_rt, t.signature, decs)


def dec_generated(t: DecoratedTree, gens: Iterable[int]) -> DecoratedTree:
    """Substructure generated by ``gens`` (closure of ``gens`` and the root under meets)."""
    gens = set(gens)
    if not gens:
        raise InputError("empty generator set")
    if t.root in gens:
        raise InputError("generators must not include the root")
    closed = generated_rooted(t.rt, gens)
    return induced_substructure(t, closed.vertices)


# -- cofinality ----------------------------------------------------------------


def _union_alphabet(s: DecoratedTree, age):
    """Amalgamate every decoration of ``s`` over its constant.

    Returns the alphabet ``a`` (universe ``0..n-1``, constant ``0``) and for
    each non-root vertex an embedding of its decoration into ``a``.
    """
    verts = s.rt.bfs_order[1:]
    first = s.decoration(verts[0])
    others = [e for e in first.universe if e != first.constant]
    mapping = {first.constant: 0}
    mapping.update({e: i + 1 for i, e in enumerate(others)})
    a = first.rename(mapping)
    embs = {verts[0]: mapping}
    for v in verts[1:]:
        d = s.decoration(v)
        found = struct_embeddings(d, a)
        if found:
            embs[v] = found[0]
            continue
        base = d.substructure([d.constant])
        a, g1, g2 = amalgamate(base, a, d, {d.constant: a.constant}, {d.constant: d.constant}, age=age, complete=True)
        # g1 is the identity on the old alphabet, so earlier embeddings survive
        assert all(g1[x] == x for x in g1)
        embs[v] = g2
    return a, embs


def embed_into_Ah(s: DecoratedTree, age=None):
    """Rooted embedding of ``s`` into some ``A[h]``.

    ``a`` amalgamates all decorations of ``s`` over the constant (for
    pointed linear orders the amalgam is completed to a total order), ``h``
    is ``height(s) - 1`` and the embedding is built level by level, sending
    each child of ``s`` to the child of ``f(s)`` carrying the same label.

    Returns ``(a, h, e)``.  A one-vertex ``s`` is a degenerate case: it
    yields a one-point alphabet, ``h = 0`` and a warning.
    """
    if age is None:
        age = default_age(s.signature)
    if len(s) == 1:
        warnings.warn("single-vertex tree: degenerate one-point alphabet", stacklevel=2)
        a = RelStructure(s.signature, [0], {}, 0)
        return a, 0, DecEmbedding(((s.root, 0),), True)
    a, embs = _union_alphabet(s, age)
    h = s.height() - 1
    _, child_of = _build_Ah(a, h)
    f = {s.root: 0, s.r: 1}
    for v in s.rt.bfs_order[1:]:
        for c in s.rt.children(v):
            f[c] = child_of[(f[v], embs[v][c])]
    return a, h, DecEmbedding.from_map(f, rooted=True)

