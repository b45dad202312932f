"""Component colorings, local actions and kaleidoscopic extension steps.

A coloring assigns a palette symbol to components ``(anchor, direction)``
and must be injective around every vertex.  On a rooted tree the root's own
component is never colored, and a *rooted* coloring gives every parent
direction the distinguished symbol ``c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import InputError
from .trees import Component, RootedTree, Tree, insert_between

Symbol = Hashable


class ColoredTree:
    def __init__(
        self,
        t: Tree | RootedTree,
        palette: Iterable[Symbol],
        colors: Mapping[Component, Symbol],
        constant: Symbol | None = None,
        validate: bool = True,
    ):
        self.t = t
        self.palette = tuple(palette)
        if len(set(self.palette)) != len(self.palette):
            raise InputError("palette symbols must be distinct")
        if constant is not None and constant not in self.palette:
            raise InputError("constant must belong to the palette")
        self.constant = constant
        tree = self.tree
        kappa: dict[Component, Symbol] = {}
        for comp, sym in colors.items():
            comp = Component(*comp)
            v, n = comp
            if v not in tree or not tree.adjacent(v, n):
                raise InputError(f"{comp} is not a component")
            if self.rooted_tree and v == self.t.root:
                raise InputError("the root's component is not colored")
            if sym not in self.palette:
                raise InputError(f"color {sym!r} not in palette")
            kappa[comp] = sym
        self.kappa = kappa
        if validate:
            bad = self.injectivity_violation()
            if bad is not None:
                raise InputError(f"coloring is not injective around vertex {bad}")

    @property
    def tree(self) -> Tree:
        return self.t.tree if isinstance(self.t, RootedTree) else self.t

    @property
    def rooted_tree(self) -> bool:
        return isinstance(self.t, RootedTree)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredTree)
            and self.t == other.t
            and self.palette == other.palette
            and self.constant == other.constant
            and self.kappa == other.kappa
        )

    def __repr__(self) -> str:
        return f"ColoredTree({self.t!r}, palette={list(self.palette)}, {len(self.kappa)} colored components)"

    def color(self, comp: Component) -> Symbol | None:
        return self.kappa.get(Component(*comp))

    def colored_vertices(self) -> list[int]:
        verts = self.tree.vertices
        if self.rooted_tree:
            return [v for v in verts if v != self.t.root]
        return list(verts)

    def at(self, x: int) -> dict[Component, Symbol]:
        """``kappa`` restricted to the components around ``x``."""
        return {Component(x, n): self.kappa[Component(x, n)] for n in self.tree.neighbors(x) if Component(x, n) in self.kappa}

    def injectivity_violation(self) -> int | None:
        for x in self.tree.vertices:
            cols = list(self.at(x).values())
            if len(set(cols)) != len(cols):
                return x
        return None

    def is_root_coloring(self) -> bool:
        """Every parent direction carries the constant."""
        if not self.rooted_tree or self.constant is None:
            return False
        return all(self.kappa.get(self.t.rho(v)) == self.constant for v in self.colored_vertices())

    def restrict(self, verts: Iterable[int]) -> dict[Component, Symbol]:
        keep = set(verts)
        return {c: s for c, s in self.kappa.items() if c.anchor in keep}


@dataclass(frozen=True)
class LocalAction:
    """Partial injective palette map ``kappa_{g x} ∘ g ∘ kappa_x^{-1}``."""

    pairs: tuple[tuple[Symbol, Symbol], ...]

    @classmethod
    def from_map(cls, m: Mapping[Symbol, Symbol]) -> "LocalAction":
        return cls(tuple(sorted(m.items(), key=lambda kv: repr(kv[0]))))

    @property
    def map(self) -> dict[Symbol, Symbol]:
        return dict(self.pairs)

    def __call__(self, a: Symbol) -> Symbol:
        return self.map[a]

    def then(self, outer: "LocalAction") -> "LocalAction":
        """``outer ∘ self`` on the symbols where both are defined."""
        om = outer.map
        return LocalAction.from_map({a: om[b] for a, b in self.pairs if b in om})

    def is_identity(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def is_injective(self) -> bool:
        vals = [b for _, b in self.pairs]
        return len(set(vals)) == len(vals)


def _check_automorphism(g: Mapping[int, int], t: Tree) -> None:
    verts = set(t.vertices)
    if set(g) != verts or set(g.values()) != verts:
        raise InputError("g must be a bijection of the vertex set")
    for x, y in t.edges:
        if not t.adjacent(g[x], g[y]):
            raise InputError("g does not preserve adjacency")


def local_action(g: Mapping[int, int], x: int, ct: ColoredTree) -> LocalAction:
    """Palette map induced by the tree automorphism ``g`` at ``x``.

    When ``kappa_x`` is not injective the preimage of a color is the first
    matching component in neighbor order.
    """
    tree = ct.tree
    _check_automorphism(g, tree)
    gx = g[x]
    inv: dict[Symbol, Component] = {}
    for comp, sym in ct.at(x).items():
        inv.setdefault(sym, comp)
    out = {}
    for sym, (v, n) in inv.items():
        img = ct.color(Component(gx, g[n]))
        if img is not None:
            out[sym] = img
    return LocalAction.from_map(out)


def compose_maps(g: Mapping[int, int], h: Mapping[int, int]) -> dict[int, int]:
    """``g ∘ h``: apply ``h`` first."""
    return {v: g[h[v]] for v in h}


def check_cocycle_identity(g: Mapping[int, int], g2: Mapping[int, int], ct: ColoredTree) -> tuple[bool, int | None]:
    """Check ``alpha(g g2, x) == alpha(g, g2 x) alpha(g2, x)`` at every vertex.

    Colorings are partial, so the right side may be undefined where ``g2``
    moves a colored component onto an uncolored one.  Both sides must agree
    wherever the right side is defined, and the left side may only be larger
    at such symbols.

    Returns ``(True, None)`` or ``(False, x)`` for the first violating ``x``.
    """
    gg2 = compose_maps(g, g2)
    for x in ct.colored_vertices():
        lhs = local_action(gg2, x, ct).map
        inner = local_action(g2, x, ct)
        rhs = inner.then(local_action(g, g2[x], ct)).map
        if any(lhs.get(a) != b for a, b in rhs.items()):
            return False, x
        if any(a in inner.map for a in lhs.keys() - rhs.keys()):
            return False, x
    return True, None


def validate_sigma(sigma: Mapping[Symbol, Mapping[Symbol, Symbol]], palette: Iterable[Symbol], c: Symbol) -> None:
    pal = set(palette)
    for a in pal:
        if a not in sigma:
            raise InputError(f"sigma undefined at {a!r}")
        perm = sigma[a]
        if set(perm) != pal or set(perm.values()) != pal:
            raise InputError(f"sigma({a!r}) is not a permutation of the palette")
        if perm[a] != c:
            raise InputError(f"sigma({a!r}) must send {a!r} to the constant")
    if any(sigma[c][a] != a for a in pal):
        raise InputError("sigma(c) must be the identity")


def transposition_sigma(palette: Iterable[Symbol], c: Symbol) -> dict[Symbol, dict[Symbol, Symbol]]:
    """``sigma(a)`` swaps ``a`` and ``c``; ``sigma(c)`` is the identity."""
    pal = list(palette)
    out = {}
    for a in pal:
        perm = {b: b for b in pal}
        perm[a], perm[c] = c, a
        out[a] = perm
    return out


def derive_root_coloring(ct: ColoredTree, sigma: Mapping[Symbol, Mapping[Symbol, Symbol]]) -> ColoredTree:
    """Recolor each vertex by ``sigma`` of its parent-direction color.

    ``kappa*(a) = sigma(kappa(rho(x))) . kappa(a)`` for every component ``a``
    around ``x``; the result sends every parent direction to ``c``.
    """
    if not ct.rooted_tree or ct.constant is None:
        raise InputError("derive_root_coloring needs a rooted tree and a constant")
    validate_sigma(sigma, ct.palette, ct.constant)
    rt: RootedTree = ct.t
    new = {}
    for x in ct.colored_vertices():
        up = ct.color(rt.rho(x))
        if up is None:
            raise InputError(f"parent direction of {x} is uncolored")
        perm = sigma[up]
        for comp, sym in ct.at(x).items():
            new[comp] = perm[sym]
    return ColoredTree(rt, ct.palette, new, ct.constant)


def _rekey(kappa: Mapping[Component, Symbol], x: int, y: int, z: int) -> dict[Component, Symbol]:
    # after subdividing x - y with z, the components (x, y) and (y, x) point at z
    out = {}
    for (v, n), sym in kappa.items():
        if (v, n) == (x, y):
            out[Component(x, z)] = sym
        elif (v, n) == (y, x):
            out[Component(y, z)] = sym
        else:
            out[Component(v, n)] = sym
    return out


def _subdivide(ct: ColoredTree, x: int, y: int):
    if isinstance(ct.t, RootedTree):
        t2, z = insert_between(ct.t.tree, x, y)
        return RootedTree(t2, ct.t.root), z
    return insert_between(ct.t, x, y)


def kaleidoscopic_extend(ct: ColoredTree, x: int, y: int, a: Symbol, b: Symbol) -> tuple[ColoredTree, int]:
    """Insert a fresh ``z`` strictly between ``x`` and ``y`` with
    ``kappa(Phi(z, x)) = a`` and ``kappa(Phi(z, y)) = b``.

    ``z`` subdivides the first edge of the path from ``x`` to ``y``; old
    colors are kept (components renamed to point at ``z`` where needed).
    """
    if x == y:
        raise InputError("x and y must differ")
    if a == b:
        raise InputError("a and b must differ")
    for s in (a, b):
        if s not in ct.palette:
            raise InputError(f"{s!r} not in palette")
    p = ct.tree.next_hop(x, y)
    t2, z = _subdivide(ct, x, p)
    kappa = _rekey(ct.kappa, x, p, z)
    kappa[Component(z, x)] = a
    kappa[Component(z, p)] = b
    return ColoredTree(t2, ct.palette, kappa, ct.constant), z


def root_kaleidoscopic_extend(ct: ColoredTree, x: int, y: int, a: Symbol) -> tuple[ColoredTree, int]:
    """Rooted step: fresh ``z`` in ``(y, x)`` with ``kappa*(Phi(z, x)) = a`` and ``kappa*(rho(z)) = c``.

    ``y`` must lie strictly below ``x``.
    """
    if not ct.rooted_tree or ct.constant is None:
        raise InputError("rooted extension needs a rooted tree and a constant")
    rt: RootedTree = ct.t
    if x == y or not rt.leq(y, x):
        raise InputError("y must lie strictly below x")
    if a == ct.constant:
        raise InputError("a must differ from the constant")
    p = rt.tree.next_hop(y, x)
    t2, z = _subdivide(ct, y, p)
    kappa = _rekey(ct.kappa, y, p, z)
    kappa[Component(z, p)] = a
    kappa[Component(z, y)] = ct.constant
    return ColoredTree(t2, ct.palette, kappa, ct.constant), z


def all_colorings(t: Tree | RootedTree, palette: Iterable[Symbol]) -> Iterator[dict[Component, Symbol]]:
    """Every total coloring that is injective around each vertex."""
    pal = tuple(palette)
    tree = t.tree if isinstance(t, RootedTree) else t
    skip = t.root if isinstance(t, RootedTree) else None
    verts = [v for v in tree.vertices if v != skip]
    local = []
    for v in verts:
        nb = tree.neighbors(v)
        local.append([{Component(v, n): s for n, s in zip(nb, choice)} for choice in permutations(pal, len(nb))])
    for combo in product(*local):
        out: dict[Component, Symbol] = {}
        for part in combo:
            out.update(part)
        yield out


def color_isomorphism(ct1: ColoredTree, ct2: ColoredTree) -> dict[int, int] | None:
    """Color-preserving isomorphism of rooted colored trees, if any.

    Around each vertex colors are injective, so colored children are matched
    by the color of their component.  Children whose component is uncolored
    are matched by backtracking; the first match in child order wins.
    """
    if not (ct1.rooted_tree and ct2.rooted_tree):
        raise InputError("color_isomorphism compares rooted colored trees")
    r1, r2 = ct1.t, ct2.t
    if len(r1) != len(r2):
        return None
    f = {r1.root: r2.root}
    if len(r1) == 1:
        return f

    def match(v: int, w: int) -> dict[int, int] | None:
        if ct1.color(r1.rho(v)) != ct2.color(r2.rho(w)):
            return None
        ks1, ks2 = r1.children(v), r2.children(w)
        if len(ks1) != len(ks2):
            return None
        col1 = {ct1.color(Component(v, c)): c for c in ks1}
        col2 = {ct2.color(Component(w, c)): c for c in ks2}
        col1.pop(None, None)
        col2.pop(None, None)
        if set(col1) != set(col2):
            return None
        out = {v: w}
        for sym, c in col1.items():
            sub = match(c, col2[sym])
            if sub is None:
                return None
            out.update(sub)
        free1 = [c for c in ks1 if ct1.color(Component(v, c)) is None]
        free2 = [c for c in ks2 if ct2.color(Component(w, c)) is None]
        if len(free1) != len(free2):
            return None

        def pair(i: int, used: frozenset) -> dict[int, int] | None:
            if i == len(free1):
                return {}
            for d in free2:
                if d in used:
                    continue
                sub = match(free1[i], d)
                if sub is not None:
                    rest = pair(i + 1, used | {d})
                    if rest is not None:
                        return {**sub, **rest}
            return None

        rest = pair(0, frozenset())
        if rest is None:
            return None
        out.update(rest)
        return out

    m = match(r1.r, r2.r)
    if m is None:
        return None
    f.update(m)
    return f


def back_and_forth(ct1: ColoredTree, ct2: ColoredTree, depth: int) -> bool:
    """Bounded back-and-forth for root-kaleidoscopic extension moves.

    At each round every move ``(x, y, a)`` on either side must be answered
    on the other side so that the extended trees stay color-isomorphic,
    for ``depth`` rounds.
    """
    f = color_isomorphism(ct1, ct2)
    if f is None:
        return False
    if depth == 0:
        return True
    for left, right, m in ((ct1, ct2, f), (ct2, ct1, {v: k for k, v in f.items()})):
        rt = left.t
        for x in left.colored_vertices():
            for y in rt.ancestors(x)[1:]:
                for a in left.palette:
                    if a == left.constant:
                        continue
                    l2, _ = root_kaleidoscopic_extend(left, x, y, a)
                    r2, _ = root_kaleidoscopic_extend(right, m[x], m[y], a)
                    if not back_and_forth(l2, r2, depth - 1):
                        return False
    return True
