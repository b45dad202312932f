"""Partition arrows between decorated trees.

``C -> (B)^k_A`` says that every ``k``-coloring of the embeddings of ``A``
into ``C`` is constant on ``g ∘ Emb(A, B)`` for some embedding ``g`` of ``B``
into ``C``.  :func:`decide_arrow` settles an instance exactly (or gives up
on a node budget), the other functions search for witnesses and extract
monochromatic copies.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .decorated import DecEmbedding, DecoratedTree, build_Ah, dec_embeddings, embed_into_Ah, induced_substructure
from .errors import ChainError, Inconclusive, InputError, SearchExhausted
from .relstruct import (
    CONSTANT_ONLY_SIGNATURE,
    POINTED_LO_SIGNATURE,
    RelStructure,
    constant_only,
    pointed_linear_order,
)

__all__ = [
    "ColoringAssignment",
    "ArrowInstance",
    "ArrowVerdict",
    "CopyTable",
    "copy_table",
    "decide_arrow",
    "find_mono_copy",
    "witness_search",
    "Witness",
    "ChainLevel",
    "Chain",
    "verify_chain",
    "build_chain",
    "proof_follow_mono",
    "deuber_explore",
    "DeuberReport",
    "ah_size",
]

DEFAULT_BUDGET = 10_000_000
_SPLIT_DEPTH = 3


@dataclass(frozen=True)
class ColoringAssignment:
    """Colors of an enumerated embedding list, by canonical index."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.k < 1:
            raise InputError("k must be at least 1")
        bad = [c for c in self.colors if not 0 <= c < self.k]
        if bad:
            raise InputError(f"colors out of range 0..{self.k - 1}: {bad[:5]}")

    @property
    def domain_size(self) -> int:
        return len(self.colors)

    def __getitem__(self, i: int) -> int:
        return self.colors[i]

    @classmethod
    def constant(cls, n: int, k: int = 2, color: int = 0) -> "ColoringAssignment":
        return cls(k, (color,) * n)


@dataclass(frozen=True)
class ArrowInstance:
    c: DecoratedTree
    b: DecoratedTree
    a: DecoratedTree
    k: int = 2
    rooted: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise InputError("k must be at least 1")
        sigs = {self.c.signature, self.b.signature, self.a.signature}
        if len(sigs) != 1:
            raise InputError("C, B and A must share an alphabet signature")


@dataclass
class ArrowVerdict:
    holds: bool
    bad_coloring: ColoringAssignment | None
    stats: dict = field(default_factory=dict)


# -- copy tables -----------------------------------------------------------------


@dataclass
class CopyTable:
    """Embedding lists of an arrow instance.

    ``copies[j]`` holds the indices (into ``a_embs``) of the ``A``-copies
    inside the ``j``-th ``B``-copy.
    """

    a_embs: list[DecEmbedding]
    b_embs: list[DecEmbedding]
    ab_embs: list[DecEmbedding]
    index: dict[tuple, int]
    copies: list[tuple[int, ...]]

    def colors_of(self, j: int, gamma: ColoringAssignment) -> set[int]:
        return {gamma[i] for i in self.copies[j]}


def copy_table(c: DecoratedTree, b: DecoratedTree, a: DecoratedTree, rooted: bool = False) -> CopyTable:
    a_embs = dec_embeddings(a, c, rooted)
    b_embs = dec_embeddings(b, c, rooted)
    ab_embs = dec_embeddings(a, b, rooted)
    index = {e.pairs: i for i, e in enumerate(a_embs)}
    copies = []
    for g in b_embs:
        copies.append(tuple(sorted({index[g.compose(e).pairs] for e in ab_embs})))
    return CopyTable(a_embs, b_embs, ab_embs, index, copies)


# -- the constraint search -------------------------------------------------------


class _Solver:
    """Backtracking over colorings with a not-all-equal constraint per copy.

    Variables are assigned in index order and values are tried in ascending
    order restricted to "at most one more than the largest color used so
    far", so the first solution is the lexicographically least one.
    """

    def __init__(self, n: int, k: int, copies: Sequence[tuple[int, ...]], budget: int):
        self.n, self.k, self.budget = n, k, budget
        self.copies = copies
        self.var_cons: list[list[int]] = [[] for _ in range(n)]
        for ci, vs in enumerate(copies):
            for v in vs:
                self.var_cons[v].append(ci)
        self.color = [-1] * n
        self.full = (1 << k) - 1
        self.dom = [self.full] * n
        self.trail: list[tuple[int, int]] = []
        self.nodes = 0

    def _assign(self, v: int, col: int) -> bool:
        self.color[v] = col
        for ci in self.var_cons[v]:
            seen = -1
            mixed = False
            free = -1
            nfree = 0
            for u in self.copies[ci]:
                cu = self.color[u]
                if cu < 0:
                    nfree += 1
                    free = u
                elif seen < 0:
                    seen = cu
                elif cu != seen:
                    mixed = True
                    break
            if mixed:
                continue
            if nfree == 0:
                return False
            if nfree == 1:
                bit = 1 << seen
                if self.dom[free] & bit:
                    self.trail.append((free, self.dom[free]))
                    self.dom[free] &= ~bit
                    if not self.dom[free]:
                        return False
        return True

    def _undo(self, v: int, mark: int) -> None:
        self.color[v] = -1
        while len(self.trail) > mark:
            u, d = self.trail.pop()
            self.dom[u] = d

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise Inconclusive("node budget exhausted", {"nodes": self.nodes})

    def seed(self, prefix: Sequence[int]) -> bool:
        for v, col in enumerate(prefix):
            self._tick()
            if not (self.dom[v] >> col) & 1 or not self._assign(v, col):
                return False
        return True

    def solve(self, start: int, top: int) -> list[int] | None:
        if start == self.n:
            return list(self.color)
        v = start
        for col in range(min(self.k, top + 2)):
            if not (self.dom[v] >> col) & 1:
                continue
            self._tick()
            mark = len(self.trail)
            if self._assign(v, col):
                found = self.solve(v + 1, max(top, col))
                if found is not None:
                    return found
            self._undo(v, mark)
        return None


def _rg_prefixes(length: int, k: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(length):
        nxt = []
        for p in out:
            top = max(p, default=-1)
            nxt.extend(p + (c,) for c in range(min(k, top + 2)))
        out = nxt
    return out


def _run_branch(n, k, copies, budget, prefix):
    s = _Solver(n, k, copies, budget)
    try:
        if not s.seed(prefix):
            return None, s.nodes
        return s.solve(len(prefix), max(prefix, default=-1)), s.nodes
    except Inconclusive:
        return None, budget + 1


def _search(n: int, k: int, copies, budget: int, threads: int) -> tuple[list[int] | None, int]:
    """Lexicographically least coloring violating every constraint, if any.

    The search tree is split at a fixed depth into branches that are solved
    independently and recombined in lexicographic order, so the answer and
    the reported node count do not depend on ``threads``.
    """
    prefixes = _rg_prefixes(min(_SPLIT_DEPTH, n), k)
    if threads > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _run_branch(n, k, copies, budget, p), prefixes))
    else:
        results = []
        for p in prefixes:
            results.append(_run_branch(n, k, copies, budget, p))
            if results[-1][0] is not None:
                break
    total = 0
    for sol, nodes in results:
        total += nodes
        if total > budget:
            raise Inconclusive("node budget exhausted", {"nodes": total})
        if sol is not None:
            return sol, total
    return None, total


def decide_arrow(inst: ArrowInstance, budget: int | None = None, threads: int = 1) -> ArrowVerdict:
    """Decide ``C -> (B)^k_A`` (rooted embeddings throughout if ``inst.rooted``).

    When the arrow fails the verdict carries the lexicographically least
    bad coloring of the canonical ``A``-embedding list.  Raises
    :class:`Inconclusive` when more than ``budget`` search nodes are needed.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    tab = copy_table(inst.c, inst.b, inst.a, inst.rooted)
    n = len(tab.a_embs)
    if n == 0:
        raise InputError("no embedding of A into C; the arrow is undefined")
    stats = {"a_copies": n, "b_copies": len(tab.b_embs), "a_in_b": len(tab.ab_embs), "nodes": 0}
    k = inst.k
    if not tab.b_embs:
        return ArrowVerdict(False, ColoringAssignment(k, (0,) * n), stats)
    if k == 1 or any(len(c) <= 1 for c in tab.copies):
        return ArrowVerdict(True, None, stats)
    sol, nodes = _search(n, k, tab.copies, budget, threads)
    stats["nodes"] = nodes
    if sol is None:
        return ArrowVerdict(True, None, stats)
    return ArrowVerdict(False, ColoringAssignment(k, tuple(sol)), stats)


def find_mono_copy(
    t: DecoratedTree,
    b: DecoratedTree,
    a: DecoratedTree,
    gamma: ColoringAssignment,
    rooted: bool = False,
    table: CopyTable | None = None,
) -> DecEmbedding:
    """First ``B``-copy in canonical order on which ``gamma`` is constant."""
    tab = table or copy_table(t, b, a, rooted)
    if gamma.domain_size != len(tab.a_embs):
        raise InputError(f"coloring covers {gamma.domain_size} embeddings, expected {len(tab.a_embs)}")
    for j, g in enumerate(tab.b_embs):
        if len(tab.colors_of(j, gamma)) <= 1:
            return g
    raise SearchExhausted("no monochromatic copy under this coloring")


# -- witness search --------------------------------------------------------------


def ah_size(alphabet_size: int, h: int) -> int:
    """Number of vertices of ``A[h]`` including the root."""
    return 1 + sum((alphabet_size - 1) ** j for j in range(h + 1))


def _preset(sig, n: int) -> RelStructure | None:
    if sig == CONSTANT_ONLY_SIGNATURE:
        return constant_only(n)
    if sig == POINTED_LO_SIGNATURE:
        return pointed_linear_order(n)
    return None


@dataclass
class Witness:
    tree: DecoratedTree
    alphabet: RelStructure
    m: int
    verdict: ArrowVerdict
    tried: list[tuple[int, int, bool]]


def witness_search(
    b: DecoratedTree,
    a: DecoratedTree,
    k: int = 2,
    rooted: bool = False,
    budget: int | None = None,
    max_vertices: int = 40,
    max_growth: int = 2,
    threads: int = 1,
) -> Witness:
    """Smallest ``T = D[m]`` with ``T -> (b)^k_a``.

    ``D`` starts as the alphabet of ``b``'s cofinal embedding and, for the
    constant-only and pointed-linear-order presets, may grow by up to
    ``max_growth`` elements.  Candidates are tried by increasing size, then
    height.  ``tried`` records ``(|D|, m, holds)`` for each candidate run.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        d0, h0, _ = embed_into_Ah(b)
    alphabets = [d0]
    if _preset(b.signature, len(d0)) is not None:
        alphabets = [_preset(b.signature, n) for n in range(max(len(d0), 2), max(len(d0), 2) + max_growth + 1)]
    cands = []
    for d in alphabets:
        if len(d) < 2:
            continue
        m = h0
        while ah_size(len(d), m) <= max_vertices:
            cands.append((ah_size(len(d), m), m, len(d), d))
            m += 1
    cands.sort(key=lambda c: c[:3])
    used = 0
    tried = []
    for _, m, _, d in cands:
        t = build_Ah(d, m)
        if not dec_embeddings(b, t, rooted, limit=1):
            continue
        if not dec_embeddings(a, t, rooted, limit=1):
            continue
        try:
            v = decide_arrow(ArrowInstance(t, b, a, k, rooted), budget - used, threads)
        except Inconclusive as exc:
            raise Inconclusive("witness search ran out of budget", {"nodes": budget, "tried": tried}) from exc
        used += v.stats["nodes"]
        tried.append((len(d), m, v.holds))
        if v.holds:
            return Witness(t, d, m, v, tried)
    raise Inconclusive(f"no witness with at most {max_vertices} vertices", {"nodes": used, "tried": tried})


# -- the proof-following monochromatizer ------------------------------------------


@dataclass(frozen=True)
class ChainLevel:
    alphabet: RelStructure
    n: int


@dataclass
class Chain:
    """``levels[i] = (C_i, n_i)`` for ``i = 0..h`` with ``n_h = 0``.

    ``a`` is the alphabet of the colored objects ``A[ell]`` and ``u`` the
    structure whose monochromatic copy is wanted.
    """

    levels: list[ChainLevel]
    a: RelStructure
    ell: int
    u: DecoratedTree

    def __post_init__(self):
        if self.ell < 1:
            raise InputError("ell must be at least 1")
        if not self.levels or self.levels[-1].n != 0:
            raise InputError("the last chain level must have n = 0")

    @property
    def h(self) -> int:
        return len(self.levels) - 1

    def target(self) -> DecoratedTree:
        lv = self.levels[0]
        return build_Ah(lv.alphabet, lv.n)

    def colored(self) -> DecoratedTree:
        return build_Ah(self.a, self.ell)


def verify_chain(chain: Chain, budget: int | None = None) -> list[tuple[str, ArrowVerdict]]:
    """Decide every arrow the chain relies on.

    Level ``i < h`` needs ``C_i[n_i] ->r (C_{i+1}[n_{i+1}+1])^2_{A[ell]}``;
    the base needs ``D[h] -> (u)^2_{A[0]}`` with ``D = C_h``.
    """
    a_ell = chain.colored()
    out = []
    for i in range(chain.h):
        ci, cj = chain.levels[i], chain.levels[i + 1]
        inst = ArrowInstance(build_Ah(ci.alphabet, ci.n), build_Ah(cj.alphabet, cj.n + 1), a_ell, 2, True)
        out.append((f"level {i}", decide_arrow(inst, budget)))
    d = chain.levels[-1].alphabet
    base = ArrowInstance(build_Ah(d, chain.h), chain.u, build_Ah(d, 0), 2, False)
    out.append(("base", decide_arrow(base, budget)))
    return out


def _least_n(make, lo: int, max_n: int, budget: int) -> int:
    for n in range(lo, max_n + 1):
        if decide_arrow(make(n), budget).holds:
            return n
    raise Inconclusive(f"no level size up to {max_n}", {})


def build_chain(
    u: DecoratedTree,
    a: RelStructure,
    ell: int,
    d: RelStructure | None = None,
    max_n: int = 16,
    budget: int | None = None,
) -> Chain:
    """Chain with the least sizes, keeping ``C_i = D`` at every level.

    ``h`` is the least height with ``D[h] -> (u)^2_{A[0]}``; then, going
    down from ``n_h = 0``, each ``n_i`` is the least value ``>= n_{i+1}``
    whose rooted arrow holds.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    if d is None:
        d = a
    a0 = build_Ah(d, 0)
    h = _least_n(lambda m: ArrowInstance(build_Ah(d, m), u, a0, 2, False), 1, max_n, budget)
    a_ell = build_Ah(a, ell)
    ns = [0]
    for _ in range(h):
        nxt = ns[0]
        n = _least_n(
            lambda m: ArrowInstance(build_Ah(d, m), build_Ah(d, nxt + 1), a_ell, 2, True),
            max(nxt, 1),
            max_n,
            budget,
        )
        ns.insert(0, n)
    return Chain([ChainLevel(d, n) for n in ns], a, ell, u)


def _up_set(t: DecoratedTree, verts: set[int], s: int) -> set[int]:
    return {t.root} | {v for v in verts if t.rt.leq(s, v)}


def proof_follow_mono(
    chain: Chain,
    gamma: ColoringAssignment,
    fallback: bool = False,
) -> DecEmbedding:
    """Monochromatic copy of ``chain.u`` in ``T = C_0[n_0]``, built level by level.

    For each depth ``i < h`` (depth of ``r`` is ``0``) and each surviving
    vertex ``s`` at that depth, the part of the current substructure above
    ``s`` is shrunk to a rooted copy of ``C_{i+1}[n_{i+1}+1]`` on which all
    rooted ``A[ell]``-embeddings share a color.  After ``h`` rounds the color
    of an ``A[ell]``-embedding only depends on the image of ``r``; a copy of
    ``u`` monochromatic for that point coloring is then a ``gamma``
    monochromatic copy.

    A failing level raises :class:`ChainError`, or with ``fallback`` the
    copy is taken from :func:`find_mono_copy` on ``T`` directly.
    """
    t = chain.target()
    a_ell = chain.colored()
    tab = copy_table(t, chain.u, a_ell)
    if gamma.domain_size != len(tab.a_embs):
        raise InputError(f"coloring covers {gamma.domain_size} embeddings, expected {len(tab.a_embs)}")
    try:
        return _follow(chain, gamma, t, a_ell, tab)
    except ChainError:
        if not fallback:
            raise
        return find_mono_copy(t, chain.u, a_ell, gamma, table=tab)


def _follow(chain: Chain, gamma: ColoringAssignment, t: DecoratedTree, a_ell: DecoratedTree, tab: CopyTable):
    current = set(t.vertices)
    for i in range(chain.h):
        lv = chain.levels[i + 1]
        piece = build_Ah(lv.alphabet, lv.n + 1)
        # depths are taken inside the current substructure, r at depth 0
        cur_rt = induced_substructure(t, current).rt
        depth = {v: cur_rt.height(v) - 1 for v in current}
        keep = {v for v in current if v == t.root or depth[v] < i}
        for s in sorted(v for v in current if v != t.root and depth[v] == i):
            sub = induced_substructure(t, _up_set(t, current, s))
            a_in_sub = dec_embeddings(a_ell, sub, rooted=True)
            local = ColoringAssignment(gamma.k, tuple(gamma[tab.index[e.pairs]] for e in a_in_sub))
            try:
                g = find_mono_copy(sub, piece, a_ell, local, rooted=True)
            except SearchExhausted as exc:
                raise ChainError(f"rooted arrow fails at level {i} below vertex {s}", level=i) from exc
            keep |= set(g.image)
        current = keep
    s_final = induced_substructure(t, current)
    # point coloring: the common color of the embeddings whose r lands on s
    delta_of: dict[int, int] = {}
    for e in dec_embeddings(a_ell, s_final):
        p = e(a_ell.r)
        col = gamma[tab.index[e.pairs]]
        if delta_of.setdefault(p, col) != col:
            raise ChainError(f"colors at vertex {p} still disagree", level=chain.h)
    a0 = build_Ah(chain.levels[-1].alphabet, 0)
    points = dec_embeddings(a0, s_final)
    delta = ColoringAssignment(gamma.k, tuple(delta_of.get(e(a0.r), 0) for e in points))
    try:
        return find_mono_copy(s_final, chain.u, a0, delta)
    except SearchExhausted as exc:
        raise ChainError("base arrow fails on the reduced tree", level=chain.h) from exc


# -- base case exploration -------------------------------------------------------


@dataclass
class DeuberReport:
    h: int
    k: int
    alphabet_size: int
    m: int
    bound: int
    within_bound: bool
    attempts: list[tuple[int, bool, int]]
    verdict: ArrowVerdict

    def as_dict(self) -> dict:
        return {
            "h": self.h,
            "k": self.k,
            "alphabet_size": self.alphabet_size,
            "m": self.m,
            "bound_2h_minus_1": self.bound,
            "within_bound": self.within_bound,
            "attempts": [{"m": m, "holds": hd, "nodes": n} for m, hd, n in self.attempts],
        }


def deuber_explore(
    b_alphabet: RelStructure,
    h: int,
    k: int = 2,
    budget: int | None = None,
    max_m: int = 6,
    threads: int = 1,
) -> DeuberReport:
    """Least ``m`` with ``B[m] -> (B[h])^k_{A[0]}``, compared with ``2h - 1``."""
    if h < 1:
        raise InputError("h must be at least 1")
    budget = DEFAULT_BUDGET if budget is None else budget
    bh = build_Ah(b_alphabet, h)
    a0 = build_Ah(b_alphabet, 0)
    attempts = []
    used = 0
    for m in range(h, max_m + 1):
        try:
            v = decide_arrow(ArrowInstance(build_Ah(b_alphabet, m), bh, a0, k), budget - used, threads)
        except Inconclusive as exc:
            raise Inconclusive("deuber search ran out of budget", {"attempts": attempts}) from exc
        used += v.stats["nodes"]
        attempts.append((m, v.holds, v.stats["nodes"]))
        if v.holds:
            return DeuberReport(h, k, len(b_alphabet), m, 2 * h - 1, m <= 2 * h - 1, attempts, v)
    raise Inconclusive(f"no m up to {max_m}", {"attempts": attempts})
