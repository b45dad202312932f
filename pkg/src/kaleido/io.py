"""JSON documents for every object the command line reads or writes.

Each document carries ``"schema"`` and ``"kind"`` fields.  Vertex ids are
integers; component labels inside decorations are neighbor ids, with the
parent direction written as ``"parent"``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .coloring import ColoredTree
from .decorated import DecEmbedding, DecoratedTree
from .errors import InputError
from .ramsey import ArrowInstance, ArrowVerdict, Chain, ChainLevel, ColoringAssignment
from .relstruct import RelStructure, Signature
from .trees import Component, RootedTree, Tree
from .cclo import TreeLinearOrder

SCHEMA = "kaleido/1"


def dumps(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_path(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def _expect(doc: Mapping, kind: str) -> None:
    got = doc.get("kind")
    if got != kind:
        raise InputError(f"expected a {kind!r} document, got {got!r}")


def _field(doc: Mapping, name: str):
    try:
        return doc[name]
    except KeyError:
        raise InputError(f"missing field {name!r}") from None


def _header(kind: str) -> dict:
    return {"schema": SCHEMA, "kind": kind}


# -- trees -----------------------------------------------------------------------


def tree_fields(t: Tree | RootedTree) -> dict:
    tree = t.tree if isinstance(t, RootedTree) else t
    out = {"vertices": list(tree.vertices), "edges": [list(e) for e in tree.edges]}
    if isinstance(t, RootedTree):
        out["root"] = t.root
    return out


def tree_to_doc(t: Tree | RootedTree) -> dict:
    return {**_header("tree"), **tree_fields(t)}


def tree_from_fields(doc: Mapping) -> Tree | RootedTree:
    try:
        vs = [int(v) for v in _field(doc, "vertices")]
        es = [(int(a), int(b)) for a, b in _field(doc, "edges")]
    except (TypeError, ValueError):
        raise InputError("vertices must be integers and edges pairs of integers") from None
    t = Tree(vs, es)
    if doc.get("root") is not None:
        return RootedTree(t, int(doc["root"]))
    return t


def tree_from_doc(doc: Mapping) -> Tree | RootedTree:
    _expect(doc, "tree")
    return tree_from_fields(doc)


# -- structures ------------------------------------------------------------------


def signature_to_doc(sig: Signature) -> dict:
    return {"relations": [[n, k] for n, k in sig.relations], "constant": sig.has_constant}


def signature_from_doc(doc: Mapping) -> Signature:
    try:
        rels = tuple((str(n), int(k)) for n, k in doc.get("relations", []))
    except (TypeError, ValueError):
        raise InputError("signature relations must be [name, arity] pairs") from None
    return Signature(rels, bool(doc.get("constant", True)))


def structure_to_doc(s: RelStructure) -> dict:
    out = _header("structure")
    out["signature"] = signature_to_doc(s.signature)
    out["universe"] = list(s.universe)
    out["relations"] = {n: sorted(list(t) for t in ts) for n, ts in s.relations.items()}
    out["constant"] = s.constant
    return out


def structure_from_doc(doc: Mapping) -> RelStructure:
    _expect(doc, "structure")
    sig = signature_from_doc(_field(doc, "signature"))
    rels = {n: [tuple(t) for t in ts] for n, ts in doc.get("relations", {}).items()}
    return RelStructure(sig, _field(doc, "universe"), rels, doc.get("constant"))


# -- decorated trees ---------------------------------------------------------------


def decorated_to_doc(dt: DecoratedTree) -> dict:
    out = {**_header("decorated"), **tree_fields(dt.rt)}
    out["signature"] = signature_to_doc(dt.signature)
    decs = {}
    for v, d in sorted(dt.decorations.items()):
        # leaves with no tuples are implied
        if len(d) == 1 and not any(d.relations.values()):
            continue
        p = dt.rt.parent[v]

        def lab(x):
            return "parent" if x == p else x

        decs[str(v)] = {
            "universe": [lab(x) for x in d.universe],
            "relations": {n: [[lab(x) for x in t] for t in sorted(ts)] for n, ts in d.relations.items()},
        }
    out["decorations"] = decs
    return out


def decorated_from_doc(doc: Mapping) -> DecoratedTree:
    _expect(doc, "decorated")
    rt = tree_from_fields(doc)
    if not isinstance(rt, RootedTree):
        raise InputError("decorated trees need a root")
    sig = signature_from_doc(_field(doc, "signature"))
    decs = {}
    for key, d in doc.get("decorations", {}).items():
        try:
            v = int(key)
        except ValueError:
            raise InputError(f"decoration key {key!r} is not a vertex id") from None
        if v not in rt or v == rt.root:
            raise InputError(f"decoration for unknown or root vertex {v}")
        p = rt.parent[v]

        def unlab(x):
            return p if x == "parent" else int(x)

        univ = [unlab(x) for x in d.get("universe", rt.tree.neighbors(v))]
        rels = {n: [tuple(unlab(x) for x in t) for t in ts] for n, ts in d.get("relations", {}).items()}
        decs[v] = RelStructure(sig, univ, rels, p)
    return DecoratedTree(rt, sig, decs)


# -- colorings -------------------------------------------------------------------


def colored_to_doc(ct: ColoredTree) -> dict:
    out = {**_header("colored"), **tree_fields(ct.t)}
    out["palette"] = list(ct.palette)
    out["constant"] = ct.constant
    out["colors"] = [[v, n, s] for (v, n), s in sorted(ct.kappa.items())]
    return out


def colored_from_doc(doc: Mapping, validate: bool = True) -> ColoredTree:
    _expect(doc, "colored")
    t = tree_from_fields(doc)
    colors = {}
    for entry in _field(doc, "colors"):
        try:
            v, n, s = entry
        except (TypeError, ValueError):
            raise InputError("colors entries are [vertex, neighbor, symbol]") from None
        colors[Component(int(v), int(n))] = s
    return ColoredTree(t, _field(doc, "palette"), colors, doc.get("constant"), validate=validate)


def coloring_to_doc(g: ColoringAssignment) -> dict:
    return {**_header("coloring"), "k": g.k, "colors": list(g.colors)}


def coloring_from_doc(doc: Mapping) -> ColoringAssignment:
    _expect(doc, "coloring")
    try:
        return ColoringAssignment(int(_field(doc, "k")), tuple(int(c) for c in _field(doc, "colors")))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad coloring: {exc}") from None


def verdict_to_doc(v: ArrowVerdict) -> dict:
    out = {**_header("verdict"), "holds": v.holds, "stats": dict(v.stats)}
    if v.bad_coloring is not None:
        out["bad_coloring"] = {"k": v.bad_coloring.k, "colors": list(v.bad_coloring.colors)}
    return out


def verdict_from_doc(doc: Mapping) -> ArrowVerdict:
    _expect(doc, "verdict")
    bad = doc.get("bad_coloring")
    g = ColoringAssignment(int(bad["k"]), tuple(bad["colors"])) if bad else None
    return ArrowVerdict(bool(_field(doc, "holds")), g, dict(doc.get("stats", {})))


def embedding_to_doc(e: DecEmbedding) -> dict:
    return {**_header("embedding"), "map": [list(p) for p in e.pairs], "rooted": e.rooted}


def embedding_from_doc(doc: Mapping) -> DecEmbedding:
    _expect(doc, "embedding")
    return DecEmbedding(tuple((int(a), int(b)) for a, b in _field(doc, "map")), bool(doc.get("rooted", False)))


# -- arrow instances and chains -----------------------------------------------------


def arrow_to_doc(inst: ArrowInstance) -> dict:
    return {
        **_header("arrow"),
        "C": decorated_to_doc(inst.c),
        "B": decorated_to_doc(inst.b),
        "A": decorated_to_doc(inst.a),
        "k": inst.k,
        "rooted": inst.rooted,
    }


def arrow_from_doc(doc: Mapping) -> ArrowInstance:
    _expect(doc, "arrow")
    return ArrowInstance(
        decorated_from_doc(_field(doc, "C")),
        decorated_from_doc(_field(doc, "B")),
        decorated_from_doc(_field(doc, "A")),
        int(doc.get("k", 2)),
        bool(doc.get("rooted", False)),
    )


def chain_to_doc(ch: Chain) -> dict:
    return {
        **_header("chain"),
        "levels": [{"alphabet": structure_to_doc(lv.alphabet), "n": lv.n} for lv in ch.levels],
        "a": structure_to_doc(ch.a),
        "ell": ch.ell,
        "u": decorated_to_doc(ch.u),
    }


def chain_from_doc(doc: Mapping) -> Chain:
    _expect(doc, "chain")
    levels = [ChainLevel(structure_from_doc(lv["alphabet"]), int(lv["n"])) for lv in _field(doc, "levels")]
    return Chain(levels, structure_from_doc(_field(doc, "a")), int(_field(doc, "ell")), decorated_from_doc(_field(doc, "u")))


# -- orders ------------------------------------------------------------------------


def order_to_doc(o: TreeLinearOrder) -> dict:
    out = {**_header("order"), **tree_fields(o.t)}
    out["ranks"] = {str(v): r for v, r in sorted(o.rank.items())}
    return out


def order_from_doc(doc: Mapping) -> TreeLinearOrder:
    _expect(doc, "order")
    t = tree_from_fields(doc)
    if isinstance(t, RootedTree):
        t = t.tree
    try:
        ranks = {int(v): int(r) for v, r in _field(doc, "ranks").items()}
    except (TypeError, ValueError, AttributeError):
        raise InputError("ranks must map vertex ids to integers") from None
    return TreeLinearOrder(t, ranks)


_READERS = {
    "tree": tree_from_doc,
    "structure": structure_from_doc,
    "decorated": decorated_from_doc,
    "colored": colored_from_doc,
    "coloring": coloring_from_doc,
    "verdict": verdict_from_doc,
    "embedding": embedding_from_doc,
    "arrow": arrow_from_doc,
    "chain": chain_from_doc,
    "order": order_from_doc,
}


def from_doc(doc: Mapping):
    """Parse any document by its ``kind``."""
    kind = doc.get("kind")
    if kind not in _READERS:
        raise InputError(f"unknown document kind {kind!r}")
    return _READERS[kind](doc)


def to_doc(obj) -> dict:
    """Serialize any supported object."""
    if isinstance(obj, DecoratedTree):
        return decorated_to_doc(obj)
    if isinstance(obj, (Tree, RootedTree)):
        return tree_to_doc(obj)
    if isinstance(obj, RelStructure):
        return structure_to_doc(obj)
    if isinstance(obj, ColoredTree):
        return colored_to_doc(obj)
    if isinstance(obj, ColoringAssignment):
        return coloring_to_doc(obj)
    if isinstance(obj, ArrowVerdict):
        return verdict_to_doc(obj)
    if isinstance(obj, DecEmbedding):
        return embedding_to_doc(obj)
    if isinstance(obj, ArrowInstance):
        return arrow_to_doc(obj)
    if isinstance(obj, Chain):
        return chain_to_doc(obj)
    if isinstance(obj, TreeLinearOrder):
        return order_to_doc(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
