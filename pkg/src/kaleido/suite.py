"""Invariant battery over a corpus directory plus exhaustively generated trees.

Each check returns a :class:`CheckResult`; :func:`run_suite` gathers them in
a fixed order, so the report is the same whatever the thread count.
"""
from __future__ import annotations

import hashlib
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from pathlib import Path
from typing import Callable

from . import __version__
from .cclo import (
    collapse_pair,
    component_order_violations,
    enumerate_cclo,
    five_point_violations,
    is_cclo,
    pi_order,
    realize_cclo,
    TreeLinearOrder,
)
from .coloring import (
    ColoredTree,
    all_colorings,
    check_cocycle_identity,
    derive_root_coloring,
    transposition_sigma,
)
from .decorated import (
    DecoratedTree,
    build_Ah,
    dec_automorphisms,
    dec_embeddings,
    dec_generated,
    embed_into_Ah,
    is_dec_embedding,
    level_counts,
)
from .errors import InputError, SearchExhausted
from .io import (
    arrow_to_doc,
    colored_to_doc,
    decorated_to_doc,
    dumps,
    from_doc,
    load_path,
    order_to_doc,
    structure_to_doc,
    tree_to_doc,
)
from .ramsey import ArrowInstance, copy_table, decide_arrow, find_mono_copy
from .relstruct import RelStructure, constant_only, pointed_linear_order, struct_automorphisms
from .trees import (
    RootedTree,
    Tree,
    between,
    component_of,
    generated_subtree,
    median,
    nonisomorphic_trees,
    path_tree,
    star_tree,
    tree_automorphisms,
)

ARROW_ENUM_LIMIT = 12


@dataclass
class Corpus:
    trees: list[Tree] = field(default_factory=list)
    alphabets: list[RelStructure] = field(default_factory=list)
    decorated: list[DecoratedTree] = field(default_factory=list)
    colored: list[ColoredTree] = field(default_factory=list)
    arrows: list[ArrowInstance] = field(default_factory=list)
    orders: list[TreeLinearOrder] = field(default_factory=list)
    digest: str = hashlib.sha256(b"").hexdigest()
    files: int = 0


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    counterexample: object = None

    def as_dict(self) -> dict:
        out = {"invariant": self.name, "passed": self.passed, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def default_corpus_dir():
    return resources.files("kaleido") / "corpus"


def load_corpus(path) -> Corpus:
    """Read every ``*.json`` document in ``path`` (sorted by file name).

    Colored trees are loaded without validation so that defective colorings
    reach the checks instead of being rejected up front.
    """
    root = Path(str(path))
    if not root.is_dir():
        raise InputError(f"corpus directory {path} not found")
    corpus = Corpus()
    h = hashlib.sha256()
    for f in sorted(root.glob("*.json")):
        h.update(f.name.encode())
        h.update(f.read_bytes())
        doc = load_path(f)
        kind = doc.get("kind")
        corpus.files += 1
        if kind == "colored":
            from .io import colored_from_doc

            corpus.colored.append(colored_from_doc(doc, validate=False))
            continue
        obj = from_doc(doc)
        if kind == "tree":
            corpus.trees.append(obj.tree if isinstance(obj, RootedTree) else obj)
        elif kind == "structure":
            corpus.alphabets.append(obj)
        elif kind == "decorated":
            corpus.decorated.append(obj)
        elif kind == "arrow":
            corpus.arrows.append(obj)
        elif kind == "order":
            corpus.orders.append(obj)
        else:
            raise InputError(f"{f.name}: kind {kind!r} has no place in a corpus")
    corpus.digest = h.hexdigest()
    return corpus


# -- generated families ------------------------------------------------------------


def small_trees(max_size: int) -> list[Tree]:
    out = []
    for n in range(1, max_size + 1):
        out.extend(nonisomorphic_trees(n))
    return out


def rooted_versions(t: Tree) -> list[RootedTree]:
    """``t`` rooted at each of its leaves (every vertex when ``|t| <= 1``)."""
    if len(t) == 1:
        return [RootedTree(t, t.vertices[0])]
    return [RootedTree(t, v) for v in t.vertices if t.degree(v) == 1]


def _tree_ce(t: Tree, **extra) -> dict:
    return {"edges": [list(e) for e in t.edges], "vertices": list(t.vertices), **extra}


# -- tree checks ---------------------------------------------------------------------


def check_median(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        for x, y, z in product(t.vertices, repeat=3):
            n += 1
            m = median(t, x, y, z)
            vals = {median(t, *p) for p in ((x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x))}
            on_paths = m in t.path(x, y) and m in t.path(y, z) and m in t.path(x, z)
            if vals != {m} or not on_paths:
                return CheckResult("median-symmetry", False, n, _tree_ce(t, triple=[x, y, z]))
    return CheckResult("median-symmetry", True, n)


def check_betweenness(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        for x, y, z in product(t.vertices, repeat=3):
            n += 1
            if between(t, x, y, z) != between(t, z, y, x):
                return CheckResult("betweenness", False, n, _tree_ce(t, triple=[x, y, z]))
            if between(t, x, y, z) and between(t, x, z, y) and y != z:
                return CheckResult("betweenness", False, n, _tree_ce(t, triple=[x, y, z]))
    return CheckResult("betweenness", True, n)


def check_meet(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        for rt in rooted_versions(t):
            vs = rt.vertices
            for x in vs:
                if not rt.leq(x, x) or not rt.leq(rt.root, x):
                    return CheckResult("meet-semilattice", False, n, _tree_ce(t, root=rt.root, pair=[x, x]))
            for x, y in product(vs, repeat=2):
                n += 1
                if rt.meet(x, y) != median(t, x, y, rt.root) or rt.meet(x, y) != rt.meet(y, x):
                    return CheckResult("meet-semilattice", False, n, _tree_ce(t, root=rt.root, pair=[x, y]))
                if x != y and rt.leq(x, y) and rt.leq(y, x):
                    return CheckResult("meet-semilattice", False, n, _tree_ce(t, root=rt.root, pair=[x, y]))
            for x, y, z in product(vs, repeat=3):
                if rt.meet(rt.meet(x, y), z) != rt.meet(x, rt.meet(y, z)):
                    return CheckResult("meet-semilattice", False, n, _tree_ce(t, root=rt.root, triple=[x, y, z]))
                if rt.leq(x, y) and rt.leq(y, z) and not rt.leq(x, z):
                    return CheckResult("meet-semilattice", False, n, _tree_ce(t, root=rt.root, triple=[x, y, z]))
    return CheckResult("meet-semilattice", True, n)


def check_components(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        for v in t.vertices:
            n += 1
            classes = {component_of(t, v, y) for y in t.vertices if y != v}
            if len(classes) != t.degree(v):
                return CheckResult("component-partition", False, n, _tree_ce(t, vertex=v))
            for y1, y2 in combinations([y for y in t.vertices if y != v], 2):
                same = component_of(t, v, y1) == component_of(t, v, y2)
                if same == between(t, y1, v, y2):
                    return CheckResult("component-partition", False, n, _tree_ce(t, vertex=v, pair=[y1, y2]))
    return CheckResult("component-partition", True, n)


def check_generated(trees: list[Tree], max_gens: int = 3) -> CheckResult:
    n = 0
    for t in trees:
        for k in range(1, min(max_gens, len(t)) + 1):
            for gens in combinations(t.vertices, k):
                n += 1
                g = generated_subtree(t, gens)
                if generated_subtree(g, g.vertices) != g or not set(gens) <= set(g.vertices):
                    return CheckResult("generated-idempotent", False, n, _tree_ce(t, gens=list(gens)))
    return CheckResult("generated-idempotent", True, n)


# -- decorated checks ---------------------------------------------------------------


def _alph_ce(a: RelStructure, **extra) -> dict:
    return {"alphabet": structure_to_doc(a), **extra}


def check_census(alphabets: list[RelStructure], max_h: int = 3) -> CheckResult:
    n = 0
    for a in alphabets:
        if len(a) < 2 or len(a) > 3:
            continue
        for h in range(max_h + 1):
            n += 1
            want = {0: 1, **{l: (len(a) - 1) ** (l - 1) for l in range(1, h + 2)}}
            got = level_counts(build_Ah(a, h))
            if got != want:
                return CheckResult("ah-census", False, n, _alph_ce(a, h=h, got=got))
    return CheckResult("ah-census", True, n)


def wreath_table(a: RelStructure, max_h: int = 2) -> list[tuple[int, int, int, int]]:
    """Rows ``(h, |Aut(A[h+1])|, |Aut_c(a)|, |Aut(A[h])|)``."""
    autc = len(struct_automorphisms(a))
    sizes = [len(dec_automorphisms(build_Ah(a, h))) for h in range(max_h + 2)]
    return [(h, sizes[h + 1], autc, sizes[h]) for h in range(max_h + 1)]


def check_wreath(alphabets: list[RelStructure], max_h: int = 2) -> CheckResult:
    n = 0
    for a in alphabets:
        if not 2 <= len(a) <= 3:
            continue
        for h, big, autc, small in wreath_table(a, max_h):
            n += 1
            if big != autc * small ** (len(a) - 1):
                return CheckResult("wreath-law", False, n, _alph_ce(a, h=h, aut_next=big, aut_c=autc, aut=small))
    return CheckResult("wreath-law", True, n)


def check_generated_bound(alphabets: list[RelStructure], max_gens: int = 3) -> CheckResult:
    n = 0
    for a in alphabets:
        if len(a) != 3:
            continue
        t = build_Ah(a, 2)
        nonroot = [v for v in t.vertices if v != t.root]
        for k in range(1, max_gens + 1):
            for gens in combinations(nonroot, k):
                n += 1
                size = len(dec_generated(t, gens)) - 1
                if size > 2 * k:
                    return CheckResult("generated-bound", False, n, _alph_ce(a, gens=list(gens), size=size))
    return CheckResult("generated-bound", True, n)


def check_cofinal(decorated: list[DecoratedTree]) -> CheckResult:
    n = 0
    for s in decorated:
        if len(s) < 2:
            continue
        n += 1
        a, h, e = embed_into_Ah(s)
        if not is_dec_embedding(e.map, s, build_Ah(a, h), rooted=True):
            return CheckResult("cofinality", False, n, {"tree": decorated_to_doc(s)})
    return CheckResult("cofinality", True, n)


# -- coloring checks ------------------------------------------------------------------


def check_injective(colored: list[ColoredTree]) -> CheckResult:
    for i, ct in enumerate(colored):
        bad = ct.injectivity_violation()
        if bad is not None:
            return CheckResult("coloring-injective", False, i + 1, {"coloring": colored_to_doc(ct), "vertex": bad})
    return CheckResult("coloring-injective", True, len(colored))


def _cocycle_all(ct: ColoredTree, autos) -> tuple[int, object]:
    n = 0
    for g, g2 in product(autos, repeat=2):
        n += 1
        ok, x = check_cocycle_identity(g, g2, ct)
        if not ok:
            return n, {"g": sorted(g.items()), "g2": sorted(g2.items()), "vertex": x}
    return n, None


def color_automorphisms(ct: ColoredTree) -> list[dict[int, int]]:
    """Tree automorphisms, fixing the root when the tree is rooted."""
    autos = tree_automorphisms(ct.tree)
    if ct.rooted_tree:
        autos = [g for g in autos if g[ct.t.root] == ct.t.root]
    return autos


def check_cocycle(colored: list[ColoredTree]) -> CheckResult:
    n = 0
    for ct in colored:
        m, bad = _cocycle_all(ct, color_automorphisms(ct))
        n += m
        if bad is not None:
            bad = [[list(p) for p in bad["g"]], [list(p) for p in bad["g2"]], bad["vertex"]]
            return CheckResult(
                "cocycle-identity", False, n,
                {"coloring": colored_to_doc(ct), "g": bad[0], "g2": bad[1], "vertex": bad[2]},
            )
    return CheckResult("cocycle-identity", True, n)


def cocycle_exhaustive(max_vertices: int, max_palette: int = 3) -> CheckResult:
    """Cocycle identity for every total coloring of every tree up to the bounds."""
    n = 0
    for t in small_trees(max_vertices):
        autos = tree_automorphisms(t)
        for size in range(1, max_palette + 1):
            pal = list(range(size))
            for kappa in all_colorings(t, pal):
                ct = ColoredTree(t, pal, kappa)
                m, bad = _cocycle_all(ct, autos)
                n += m
                if bad is not None:
                    return CheckResult("cocycle-exhaustive", False, n, {"coloring": colored_to_doc(ct)})
    return CheckResult("cocycle-exhaustive", True, n)


def root_coloring_exhaustive(max_vertices: int, max_palette: int = 3) -> CheckResult:
    """``derive_root_coloring`` output sends every parent direction to ``c``."""
    n = 0
    for t in small_trees(max_vertices):
        for rt in rooted_versions(t):
            if len(rt) < 2:
                continue
            for size in range(1, max_palette + 1):
                pal = list(range(size))
                sigma = transposition_sigma(pal, 0)
                for kappa in all_colorings(rt, pal):
                    n += 1
                    ct = ColoredTree(rt, pal, kappa, constant=0)
                    out = derive_root_coloring(ct, sigma)
                    if not out.is_root_coloring() or out.injectivity_violation() is not None:
                        return CheckResult("root-coloring", False, n, {"coloring": colored_to_doc(ct)})
    return CheckResult("root-coloring", True, n)


# -- arrow checks ---------------------------------------------------------------------


def literal_arrow(inst: ArrowInstance) -> tuple[bool, tuple[int, ...] | None]:
    """Arrow by enumerating all ``k^n`` colorings in lexicographic order."""
    tab = copy_table(inst.c, inst.b, inst.a, inst.rooted)
    n = len(tab.a_embs)
    for cols in product(range(inst.k), repeat=n):
        if all(len({cols[i] for i in cp}) > 1 for cp in tab.copies):
            return False, cols
    return True, None


def check_arrows(arrows: list[ArrowInstance]) -> CheckResult:
    n = 0
    for inst in arrows:
        size = len(dec_embeddings(inst.a, inst.c, inst.rooted))
        if size == 0 or size > ARROW_ENUM_LIMIT:
            continue
        n += 1
        v = decide_arrow(inst)
        holds, bad = literal_arrow(inst)
        got = None if v.bad_coloring is None else v.bad_coloring.colors
        if v.holds != holds or got != bad:
            return CheckResult("arrow-soundness", False, n, {"instance": arrow_to_doc(inst), "decided": v.holds})
    return CheckResult("arrow-soundness", True, n)


def check_bad_replay(arrows: list[ArrowInstance]) -> CheckResult:
    n = 0
    for inst in arrows:
        if not dec_embeddings(inst.a, inst.c, inst.rooted, limit=1):
            continue
        v = decide_arrow(inst)
        if v.holds:
            continue
        n += 1
        try:
            find_mono_copy(inst.c, inst.b, inst.a, v.bad_coloring, inst.rooted)
        except SearchExhausted:
            continue
        return CheckResult("bad-coloring-replay", False, n, {"instance": arrow_to_doc(inst)})
    return CheckResult("bad-coloring-replay", True, n)


# -- order checks ---------------------------------------------------------------------


def naive_cclo(t: Tree) -> list[TreeLinearOrder]:
    from itertools import permutations

    return [o for o in (TreeLinearOrder(t, p) for p in permutations(t.vertices)) if is_cclo(o)]


def check_cclo_counts(trees: list[Tree]) -> CheckResult:
    for i, t in enumerate(trees):
        fast, slow = enumerate_cclo(t), naive_cclo(t)
        if fast != slow:
            return CheckResult("cclo-count", False, i + 1, _tree_ce(t, fast=len(fast), naive=len(slow)))
    return CheckResult("cclo-count", True, len(trees))


def check_five_point(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        orders = enumerate_cclo(t)
        n += len(orders)
        bad = five_point_violations(t, orders)
        if bad:
            i, q = bad[0]
            return CheckResult("five-point-1", False, n, _tree_ce(t, order=list(orders[i].sequence), line=list(q)))
    return CheckResult("five-point-1", True, n)


def check_component_order(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        orders = enumerate_cclo(t)
        n += len(orders)
        bad = component_order_violations(t, orders)
        if bad:
            i, q = bad[0]
            return CheckResult("five-point-2", False, n, _tree_ce(t, order=list(orders[i].sequence), witness=list(q)))
    return CheckResult("five-point-2", True, n)


def check_round_trip(trees: list[Tree], extra: list[TreeLinearOrder] = ()) -> CheckResult:
    n = 0
    orders = [o for t in trees for o in enumerate_cclo(t)] + [o for o in extra if is_cclo(o)]
    for o in orders:
        n += 1
        back = pi_order(realize_cclo(o.t, o)).restrict(o.t.vertices, o.t)
        if back != o:
            return CheckResult("pi-round-trip", False, n, {"order": order_to_doc(o), "got": list(back.sequence)})
    return CheckResult("pi-round-trip", True, n)


def check_collapse(trees: list[Tree]) -> CheckResult:
    n = 0
    for t in trees:
        for x, y in t.edges:
            for x0, x1 in ((x, y), (y, x)):
                n += 1
                q1, q2 = collapse_pair(t, x0, x1)
                p1 = pi_order(q1).restrict(t.vertices, t)
                p2 = pi_order(q2).restrict(t.vertices, t)
                # q1's parent direction at x0 points towards x1, q2's does not
                up1 = q1.rt.parent[x0] == q1.tree.next_hop(x0, x1)
                up2 = q2.rt.parent[x0] == q2.tree.next_hop(x0, x1)
                if p1 != p2 or not up1 or up2:
                    return CheckResult("collapse-pair", False, n, _tree_ce(t, pair=[x0, x1]))
    return CheckResult("collapse-pair", True, n)


# -- driver -------------------------------------------------------------------------


def _checks(corpus: Corpus, max_size: int) -> list[Callable[[], CheckResult]]:
    trees = small_trees(max_size) + corpus.trees
    small = [t for t in trees if len(t) <= 5]
    color_size = min(max_size, 4)
    return [
        lambda: check_median(trees),
        lambda: check_betweenness(trees),
        lambda: check_meet(trees),
        lambda: check_components(trees),
        lambda: check_generated(trees),
        lambda: check_census(corpus.alphabets),
        lambda: check_wreath(corpus.alphabets),
        lambda: check_generated_bound(corpus.alphabets),
        lambda: check_cofinal(corpus.decorated),
        lambda: check_injective(corpus.colored),
        lambda: check_cocycle(corpus.colored),
        lambda: cocycle_exhaustive(color_size),
        lambda: root_coloring_exhaustive(color_size),
        lambda: check_arrows(corpus.arrows),
        lambda: check_bad_replay(corpus.arrows),
        lambda: check_cclo_counts(small),
        lambda: check_five_point(trees),
        lambda: check_component_order(trees),
        lambda: check_round_trip(small, corpus.orders),
        lambda: check_collapse(small),
    ]


def run_suite(corpus: Corpus, max_size: int = 5, threads: int = 1) -> dict:
    """Run the battery and return the report document (no timing fields)."""
    if max_size < 1:
        raise InputError("max-size must be positive")
    checks = _checks(corpus, max_size)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda f: f(), checks))
        else:
            results = [f() for f in checks]
    return {
        "schema": "kaleido/1",
        "kind": "report",
        "command": "suite",
        "version": __version__,
        "inputs_digest": corpus.digest,
        "corpus_files": corpus.files,
        "max_size": max_size,
        "passed": all(r.passed for r in results),
        "results": [r.as_dict() for r in results],
    }


# -- the shipped corpus ------------------------------------------------------------------


def default_corpus_documents() -> dict[str, dict]:
    """File name to document for the corpus shipped with the package."""
    from .coloring import ColoredTree as CT

    docs: dict[str, dict] = {}
    alph = {
        "const2": constant_only(2),
        "const3": constant_only(3),
        "lo2": pointed_linear_order(2),
        "lo3": pointed_linear_order(3),
    }
    for name, a in alph.items():
        docs[f"alphabet_{name}.json"] = structure_to_doc(a)
    docs["tree_path4.json"] = tree_to_doc(path_tree(4))
    docs["tree_star3.json"] = tree_to_doc(star_tree(3))
    docs["tree_spider.json"] = tree_to_doc(Tree(range(6), [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]))

    c3, lo3 = alph["const3"], alph["lo3"]
    docs["decorated_const3_A1.json"] = decorated_to_doc(build_Ah(c3, 1))
    docs["decorated_lo3_A2.json"] = decorated_to_doc(build_Ah(lo3, 2))
    a2 = build_Ah(c3, 2)
    docs["decorated_branch.json"] = decorated_to_doc(dec_generated(a2, [4, 5]))
    docs["decorated_path.json"] = decorated_to_doc(build_Ah(alph["const2"], 1))
    o = TreeLinearOrder(path_tree(3), [1, 0, 2])
    docs["decorated_configuration.json"] = decorated_to_doc(realize_cclo(o.t, o))

    star = star_tree(3)
    docs["colored_star.json"] = colored_to_doc(
        CT(star, ["c", "d", "e"], {(0, 1): "c", (0, 2): "d", (0, 3): "e", (1, 0): "d", (2, 0): "d", (3, 0): "e"})
    )
    p4 = path_tree(4)
    docs["colored_path.json"] = colored_to_doc(
        CT(p4, ["c", "d"], {(0, 1): "c", (1, 0): "d", (1, 2): "c", (2, 1): "c", (2, 3): "d", (3, 2): "c"})
    )
    rp = RootedTree(path_tree(4), 0)
    docs["colored_rooted.json"] = colored_to_doc(
        CT(rp, ["c", "d", "e"], {(1, 0): "c", (1, 2): "e", (2, 1): "c", (2, 3): "d", (3, 2): "c"}, constant="c")
    )

    c2, lo2 = alph["const2"], alph["lo2"]
    inst = [
        ("a0_a0_a0", build_Ah(c2, 0), build_Ah(c2, 0), build_Ah(c2, 0), 2, False),
        ("const2_A1_A1_A0", build_Ah(c2, 1), build_Ah(c2, 1), build_Ah(c2, 0), 2, False),
        ("const2_A2_A1_A0", build_Ah(c2, 2), build_Ah(c2, 1), build_Ah(c2, 0), 2, False),
        ("const2_A2_A1_A0_k3", build_Ah(c2, 2), build_Ah(c2, 1), build_Ah(c2, 0), 3, False),
        ("const2_A4_A1_A0_k3", build_Ah(c2, 4), build_Ah(c2, 1), build_Ah(c2, 0), 3, False),
        ("const2_A1_A1_A0_k1", build_Ah(c2, 1), build_Ah(c2, 1), build_Ah(c2, 0), 1, False),
        ("const3_A1_A1_A0", build_Ah(c3, 1), build_Ah(c3, 1), build_Ah(c3, 0), 2, False),
        ("const3_A2_A1_A0", build_Ah(c3, 2), build_Ah(c3, 1), build_Ah(c3, 0), 2, False),
        ("lo2_A2_A1_A0", build_Ah(lo2, 2), build_Ah(lo2, 1), build_Ah(lo2, 0), 2, False),
        ("lo3_A1_A1_A0", build_Ah(lo3, 1), build_Ah(lo3, 1), build_Ah(lo3, 0), 2, False),
        ("const2_rooted_A2_A2_A1", build_Ah(c2, 2), build_Ah(c2, 2), build_Ah(c2, 1), 2, True),
        ("const2_rooted_A3_A2_A1", build_Ah(c2, 3), build_Ah(c2, 2), build_Ah(c2, 1), 2, True),
        ("const3_rooted_A1_A1_A0", build_Ah(c3, 1), build_Ah(c3, 1), build_Ah(c3, 0), 2, True),
    ]
    for name, c, b, a, k, rooted in inst:
        docs[f"arrow_{name}.json"] = arrow_to_doc(ArrowInstance(c, b, a, k, rooted))
    docs["order_path3.json"] = order_to_doc(o)
    return docs


def write_corpus(path, docs: dict[str, dict]) -> None:
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        (root / name).write_text(dumps(doc), encoding="utf-8")
