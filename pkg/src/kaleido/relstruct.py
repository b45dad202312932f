"""Finite relational structures with an optional distinguished constant.

These are the decoration alphabets: every vertex of a decorated tree carries
one of them on its set of components.  Element ids are local to a structure;
maps between structures are always explicit dicts.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable, Iterable, Mapping

from .errors import AmalgamationFailure, InputError

Elem = Hashable
ElemMap = dict


@dataclass(frozen=True)
class Signature:
    relations: tuple[tuple[str, int], ...] = ()
    has_constant: bool = True

    def __post_init__(self):
        rels = tuple((str(n), int(k)) for n, k in self.relations)
        names = [n for n, _ in rels]
        if len(set(names)) != len(names):
            raise InputError("relation names must be distinct")
        if any(k < 1 for _, k in rels):
            raise InputError("arities must be positive")
        object.__setattr__(self, "relations", rels)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.relations)

    def arity(self, name: str) -> int:
        return dict(self.relations)[name]


class RelStructure:
    """A finite structure: universe, relation tuples and maybe a constant."""

    __slots__ = ("signature", "universe", "relations", "constant", "_hash")

    def __init__(
        self,
        signature: Signature,
        universe: Iterable[Elem],
        relations: Mapping[str, Iterable[Iterable[Elem]]] | None = None,
        constant: Elem | None = None,
    ):
        univ = tuple(sorted(set(universe)))
        if len(univ) == 0:
            raise InputError("empty universe")
        relations = dict(relations or {})
        unknown = set(relations) - set(signature.names)
        if unknown:
            raise InputError(f"relations not in signature: {sorted(unknown)}")
        members = set(univ)
        rels: dict[str, frozenset] = {}
        for name, k in signature.relations:
            tuples = frozenset(tuple(t) for t in relations.get(name, ()))
            for t in tuples:
                if len(t) != k:
                    raise InputError(f"tuple {t} has wrong arity for {name}/{k}")
                if not set(t) <= members:
                    raise InputError(f"tuple {t} of {name} leaves the universe")
            rels[name] = tuples
        if signature.has_constant:
            if constant is None or constant not in members:
                raise InputError("constant must be an element of the universe")
        elif constant is not None:
            raise InputError("signature has no constant symbol")
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "universe", univ)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "constant", constant)
        object.__setattr__(
            self,
            "_hash",
            hash((signature, univ, tuple(sorted((n, tuple(sorted(v))) for n, v in rels.items())), constant)),
        )

    def __setattr__(self, key, value):
        raise AttributeError("RelStructure is immutable")

    def __len__(self) -> int:
        return len(self.universe)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RelStructure)
            and self.signature == other.signature
            and self.universe == other.universe
            and self.relations == other.relations
            and self.constant == other.constant
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rels = {n: sorted(v) for n, v in self.relations.items() if v}
        return f"RelStructure(universe={list(self.universe)}, relations={rels}, constant={self.constant!r})"

    def holds(self, name: str, tup: tuple) -> bool:
        return tup in self.relations[name]

    def substructure(self, elems: Iterable[Elem]) -> "RelStructure":
        keep = set(elems)
        if not keep <= set(self.universe):
            raise InputError("substructure elements must lie in the universe")
        if self.signature.has_constant and self.constant not in keep:
            raise InputError("substructure must contain the constant")
        rels = {n: [t for t in ts if set(t) <= keep] for n, ts in self.relations.items()}
        return RelStructure(self.signature, keep, rels, self.constant)

    def rename(self, mapping: Mapping[Elem, Elem]) -> "RelStructure":
        """Isomorphic copy with elements renamed through ``mapping``."""
        if len(set(mapping[x] for x in self.universe)) != len(self.universe):
            raise InputError("renaming must be injective")
        rels = {n: [tuple(mapping[x] for x in t) for t in ts] for n, ts in self.relations.items()}
        const = mapping[self.constant] if self.signature.has_constant else None
        return RelStructure(self.signature, [mapping[x] for x in self.universe], rels, const)


# -- presets ---------------------------------------------------------------

LT = "lt"
POINTED_LO_SIGNATURE = Signature(((LT, 2),), True)
CONSTANT_ONLY_SIGNATURE = Signature((), True)


def constant_only(n: int) -> RelStructure:
    """``{0, ..., n-1}`` with no relations and constant ``0``."""
    return RelStructure(CONSTANT_ONLY_SIGNATURE, range(n), {}, 0)


def pointed_linear_order(n: int) -> RelStructure:
    """Linear order ``0 < 1 < ... < n-1`` whose least element is the constant."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    return RelStructure(POINTED_LO_SIGNATURE, range(n), {LT: pairs}, 0)


def linear_order(n: int) -> RelStructure:
    pairs = [(i, j) for i in range(n) for j in range(n) if i < j]
    return RelStructure(Signature(((LT, 2),), False), range(n), {LT: pairs})


class TotalOrderAge:
    """Age constraint: ``relation`` is a strict total order.

    With ``constant_least`` the constant must also be its minimum (the pointed
    linear orders).
    """

    def __init__(self, relation: str = LT, constant_least: bool = False):
        self.relation = relation
        self.constant_least = constant_least

    def __repr__(self) -> str:
        return f"TotalOrderAge({self.relation!r}, constant_least={self.constant_least})"

    def violation(self, s: RelStructure):
        """``None`` if ``s`` satisfies the constraint, else a description."""
        rel = s.relations[self.relation]
        for x in s.universe:
            if (x, x) in rel:
                return ("reflexive", x)
        for x, y in product(s.universe, repeat=2):
            if x == y:
                continue
            if (x, y) in rel and (y, x) in rel:
                return ("symmetric", x, y)
            if (x, y) not in rel and (y, x) not in rel:
                return ("incomparable", x, y)
        for x, y, z in product(s.universe, repeat=3):
            if (x, y) in rel and (y, z) in rel and (x, z) not in rel:
                return ("intransitive", x, y, z)
        if self.constant_least and s.signature.has_constant:
            c = s.constant
            for x in s.universe:
                if x != c and (c, x) not in rel:
                    return ("constant-not-least", x)
        return None

    def complete(self, s: RelStructure, prefer: Iterable[Elem] = ()) -> RelStructure:
        """Extend the (acyclic) relation of ``s`` to a total order.

        Ties go to elements listed in ``prefer`` first, then ascending ids.
        """
        rel = set(s.relations[self.relation])
        rank = {x: i for i, x in enumerate(prefer)}
        pending = set(s.universe)
        order = []
        while pending:
            ready = [x for x in pending if not any((y, x) in rel for y in pending if y != x)]
            if not ready:
                raise AmalgamationFailure("relation has a cycle; no total completion", structure=s)
            x = min(ready, key=lambda e: (rank.get(e, len(rank)), e))
            order.append(x)
            pending.discard(x)
        pairs = [(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order))]
        rels = dict(s.relations)
        rels[self.relation] = pairs
        return RelStructure(s.signature, s.universe, rels, s.constant)


POINTED_LO_AGE = TotalOrderAge(LT, constant_least=True)


# -- embeddings ------------------------------------------------------------


def _check_same_signature(a: RelStructure, b: RelStructure) -> None:
    if a.signature != b.signature:
        raise InputError("signature mismatch")


def is_embedding(f: Mapping[Elem, Elem], a: RelStructure, b: RelStructure) -> bool:
    """Injective, relation-preserving in both directions, constant to constant."""
    _check_same_signature(a, b)
    if set(f) != set(a.universe) or not set(f.values()) <= set(b.universe):
        return False
    if len(set(f.values())) != len(f):
        return False
    if a.signature.has_constant and f[a.constant] != b.constant:
        return False
    for name, k in a.signature.relations:
        ra, rb = a.relations[name], b.relations[name]
        for t in product(a.universe, repeat=k):
            if (t in ra) != (tuple(f[x] for x in t) in rb):
                return False
    return True


def struct_embeddings(a: RelStructure, b: RelStructure) -> list[ElemMap]:
    """All embeddings of ``a`` into ``b``, in lexicographic order of images."""
    _check_same_signature(a, b)
    order = list(a.universe)
    if a.signature.has_constant:
        order.remove(a.constant)
        order.insert(0, a.constant)
    rels = [(a.relations[n], b.relations[n], k) for n, k in a.signature.relations]
    out: list[ElemMap] = []
    f: dict = {}
    used: set = set()

    def consistent(x) -> bool:
        done = list(f)
        for ra, rb, k in rels:
            for t in product(done, repeat=k):
                if x not in t:
                    continue
                if (t in ra) != (tuple(f[y] for y in t) in rb):
                    return False
        return True

    def extend(i: int) -> None:
        if i == len(order):
            out.append(dict(f))
            return
        x = order[i]
        if i == 0 and a.signature.has_constant:
            cands = [b.constant]
        else:
            cands = b.universe
        for y in cands:
            if y in used:
                continue
            f[x] = y
            used.add(y)
            if consistent(x):
                extend(i + 1)
            used.discard(y)
            del f[x]

    extend(0)
    out.sort(key=lambda m: tuple(m[x] for x in a.universe))
    return out


def struct_automorphisms(a: RelStructure) -> list[ElemMap]:
    return struct_embeddings(a, a)


def amalgamate(
    a: RelStructure,
    b1: RelStructure,
    b2: RelStructure,
    f1: Mapping[Elem, Elem],
    f2: Mapping[Elem, Elem],
    age=None,
    complete: bool = False,
):
    """Free amalgam of ``b1`` and ``b2`` over ``a``.

    Returns ``(c, g1, g2)`` with ``g1∘f1 == g2∘f2``.  The universe of ``c``
    is ``0..n-1``: ``b1``'s elements first (ascending), then the elements of
    ``b2`` outside the image of ``f2``.  When ``age`` is given and the free
    amalgam violates it, :class:`AmalgamationFailure` is raised carrying the
    violation, unless ``complete`` is set and the constraint can extend the
    amalgam (total orders can).
    """
    for f, b in ((f1, b1), (f2, b2)):
        if not is_embedding(f, a, b):
            raise InputError("amalgamation needs embeddings")
    g1 = {x: i for i, x in enumerate(b1.universe)}
    back = {f2[x]: f1[x] for x in a.universe}
    g2 = {}
    nxt = len(g1)
    for y in b2.universe:
        if y in back:
            g2[y] = g1[back[y]]
        else:
            g2[y] = nxt
            nxt += 1
    rels = {}
    for name, _ in a.signature.relations:
        ts = {tuple(g1[x] for x in t) for t in b1.relations[name]}
        ts |= {tuple(g2[x] for x in t) for t in b2.relations[name]}
        rels[name] = ts
    const = g1[b1.constant] if a.signature.has_constant else None
    c = RelStructure(a.signature, range(nxt), rels, const)
    if age is not None:
        bad = age.violation(c)
        if bad is not None:
            if not complete or not hasattr(age, "complete"):
                raise AmalgamationFailure(f"free amalgam violates {age!r}: {bad}", missing=bad, structure=c)
            c = age.complete(c, prefer=[g1[x] for x in b1.universe])
            bad = age.violation(c)
            if bad is not None:
                raise AmalgamationFailure(f"no completion satisfies {age!r}: {bad}", missing=bad, structure=c)
    return c, g1, g2
