"""Command-line front end.

Every subcommand reads JSON documents and writes one JSON document to
stdout (or ``-o``).  Exit codes: 0 holds/ok, 1 fails, 2 error or
inconclusive.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time
import warnings

from . import __version__
from .cclo import DEFAULT_BOUND, collapse_pair, enumerate_cclo, is_converging, is_convex, is_convex_duchesne, pi_order, realize_cclo
from .decorated import DecoratedTree, build_Ah, dec_automorphisms, dec_embeddings
from .errors import ChainError, Inconclusive, InputError, KaleidoError, SearchExhausted
from .io import (
    chain_from_doc,
    coloring_from_doc,
    decorated_from_doc,
    decorated_to_doc,
    dumps,
    embedding_to_doc,
    load_path,
    order_from_doc,
    order_to_doc,
    structure_from_doc,
    structure_to_doc,
    tree_from_doc,
    verdict_to_doc,
)
from .ramsey import (
    ArrowInstance,
    ColoringAssignment,
    copy_table,
    decide_arrow,
    deuber_explore,
    find_mono_copy,
    proof_follow_mono,
    witness_search,
)
from .suite import default_corpus_dir, load_corpus, run_suite
from .trees import RootedTree

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None


def _emit(args, doc: dict) -> None:
    text = dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _decorated(path: str) -> DecoratedTree:
    return decorated_from_doc(load_path(path))


def _budget(args) -> int:
    return args.budget if args.budget is not None else _env_int("KALEIDO_BUDGET", 10_000_000)


def _threads(args) -> int:
    n = args.threads if args.threads is not None else _env_int("KALEIDO_THREADS", 1)
    if n < 1:
        raise InputError("thread count must be positive")
    return n


# -- subcommands -------------------------------------------------------------------


def cmd_gen(args) -> int:
    a = structure_from_doc(load_path(args.alphabet))
    _emit(args, decorated_to_doc(build_Ah(a, args.h)))
    return EXIT_OK


def cmd_arrow(args) -> int:
    inst = ArrowInstance(_decorated(args.C), _decorated(args.B), _decorated(args.A), args.k, args.rooted)
    v = decide_arrow(inst, _budget(args), _threads(args))
    _emit(args, verdict_to_doc(v))
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_suite(args) -> int:
    corpus = load_corpus(args.corpus or default_corpus_dir())
    start = time.perf_counter()
    report = run_suite(corpus, args.max_size, _threads(args))
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    _emit(args, report)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_emb(args) -> int:
    s, t = _decorated(args.S), _decorated(args.T)
    embs = dec_embeddings(s, t, args.rooted)
    doc = {"schema": "kaleido/1", "kind": "embeddings", "rooted": args.rooted, "count": len(embs)}
    if args.list:
        doc["embeddings"] = [embedding_to_doc(e)["map"] for e in embs]
    _emit(args, doc)
    return EXIT_OK


def cmd_aut(args) -> int:
    t = _decorated(args.T)
    autos = dec_automorphisms(t)
    doc = {"schema": "kaleido/1", "kind": "automorphisms", "count": len(autos)}
    if args.list:
        doc["automorphisms"] = [embedding_to_doc(e)["map"] for e in autos]
    _emit(args, doc)
    return EXIT_OK


def cmd_witness(args) -> int:
    w = witness_search(
        _decorated(args.B), _decorated(args.A), args.k, args.rooted, _budget(args), args.max_vertices, threads=_threads(args)
    )
    doc = {
        "schema": "kaleido/1",
        "kind": "witness",
        "m": w.m,
        "alphabet": structure_to_doc(w.alphabet),
        "tree": decorated_to_doc(w.tree),
        "stats": w.verdict.stats,
        "tried": [{"alphabet_size": s, "m": m, "holds": h} for s, m, h in w.tried],
    }
    _emit(args, doc)
    return EXIT_OK


def _coloring_for(args, n: int, k: int = 2) -> ColoringAssignment:
    if args.coloring:
        g = coloring_from_doc(load_path(args.coloring))
        if g.domain_size != n:
            raise InputError(f"coloring covers {g.domain_size} embeddings, expected {n}")
        return g
    rng = random.Random(args.seed)
    return ColoringAssignment(k, tuple(rng.randrange(k) for _ in range(n)))


def cmd_mono(args) -> int:
    if args.follow_proof:
        if len(args.inputs) != 1:
            raise InputError("--follow-proof takes a single chain document")
        chain = chain_from_doc(load_path(args.inputs[0]))
        n = len(dec_embeddings(chain.colored(), chain.target()))
        gamma = _coloring_for(args, n)
        e = proof_follow_mono(chain, gamma, fallback=args.fallback)
        how = "proof"
    else:
        if len(args.inputs) != 3:
            raise InputError("mono takes T B A documents")
        t, b, a = (_decorated(p) for p in args.inputs)
        tab = copy_table(t, b, a, args.rooted)
        gamma = _coloring_for(args, len(tab.a_embs))
        e = find_mono_copy(t, b, a, gamma, args.rooted, table=tab)
        how = "search"
    doc = {"schema": "kaleido/1", "kind": "mono", "method": how, "copy": embedding_to_doc(e)["map"]}
    _emit(args, doc)
    return EXIT_OK


def cmd_deuber(args) -> int:
    b = structure_from_doc(load_path(args.alphabet))
    rep = deuber_explore(b, args.h, args.k, _budget(args), args.max_m, _threads(args))
    _emit(args, {"schema": "kaleido/1", "kind": "deuber", **rep.as_dict()})
    return EXIT_OK


def _plain_tree(path: str):
    t = tree_from_doc(load_path(path))
    return t.tree if isinstance(t, RootedTree) else t


def cmd_cclo_enum(args) -> int:
    t = _plain_tree(args.tree)
    orders = enumerate_cclo(t, args.bound)
    doc = {
        "schema": "kaleido/1",
        "kind": "cclo-list",
        "count": len(orders),
        "orders": [list(o.sequence) for o in orders],
    }
    _emit(args, doc)
    return EXIT_OK


def cmd_cclo_check(args) -> int:
    o = order_from_doc(load_path(args.order))
    conv, w3 = is_converging(o)
    doc = {"schema": "kaleido/1", "kind": "cclo-check", "converging": conv, "convex": None}
    if w3 is not None:
        doc["converging_witness"] = list(w3)
    else:
        cvx, w4 = is_convex(o)
        doc["convex"] = cvx
        doc["convex_duchesne"] = is_convex_duchesne(o)
        if w4 is not None:
            doc["convex_witness"] = list(w4)
    _emit(args, doc)
    return EXIT_OK if conv and doc["convex"] else EXIT_FAIL


def cmd_pi(args) -> int:
    _emit(args, order_to_doc(pi_order(_decorated(args.config))))
    return EXIT_OK


def cmd_realize(args) -> int:
    o = order_from_doc(load_path(args.order))
    _emit(args, decorated_to_doc(realize_cclo(o.t, o)))
    return EXIT_OK


def cmd_collapse(args) -> int:
    t = _plain_tree(args.tree)
    q1, q2 = collapse_pair(t, args.x0, args.x1)
    p1 = pi_order(q1).restrict(t.vertices, t)
    p2 = pi_order(q2).restrict(t.vertices, t)
    doc = {
        "schema": "kaleido/1",
        "kind": "collapse",
        "q1": decorated_to_doc(q1),
        "q2": decorated_to_doc(q2),
        "pi_q1": list(p1.sequence),
        "pi_q2": list(p2.sequence),
        "agree": p1 == p2,
    }
    _emit(args, doc)
    return EXIT_OK if p1 == p2 else EXIT_FAIL


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the document here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices (default 0)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (env KALEIDO_THREADS)")
    common.add_argument("--budget", type=int, default=None, help="search node budget (env KALEIDO_BUDGET)")

    p = argparse.ArgumentParser(prog="kaleido", description="Decorated trees, partition arrows and tree orders.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", parents=[common], help="build A[h] from an alphabet")
    s.add_argument("alphabet")
    s.add_argument("h", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("arrow", parents=[common], help="decide C -> (B)^k_A")
    s.add_argument("C")
    s.add_argument("B")
    s.add_argument("A")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--rooted", action="store_true")
    s.set_defaults(func=cmd_arrow)

    s = sub.add_parser("suite", parents=[common], help="run the invariant battery")
    s.add_argument("--corpus", help="corpus directory (default: the shipped corpus)")
    s.add_argument("--max-size", type=int, default=5)
    s.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("emb", parents=[common], help="embeddings of S into T")
    s.add_argument("S")
    s.add_argument("T")
    s.add_argument("--rooted", action="store_true")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_emb)

    s = sub.add_parser("aut", parents=[common], help="automorphisms of T")
    s.add_argument("T")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("witness", parents=[common], help="find T with T -> (B)^k_A")
    s.add_argument("B")
    s.add_argument("A")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--rooted", action="store_true")
    s.add_argument("--max-vertices", type=int, default=40)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("mono", parents=[common], help="monochromatic copy under a coloring")
    s.add_argument("inputs", nargs="+", help="T B A, or a chain document with --follow-proof")
    s.add_argument("--coloring", help="coloring document (default: random from --seed)")
    s.add_argument("--rooted", action="store_true")
    s.add_argument("--follow-proof", action="store_true")
    s.add_argument("--fallback", action="store_true", help="fall back to direct search if a level fails")
    s.set_defaults(func=cmd_mono)

    s = sub.add_parser("deuber", parents=[common], help="least m with B[m] -> (B[h])^k_A[0]")
    s.add_argument("alphabet")
    s.add_argument("--h", type=int, default=1)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--max-m", type=int, default=6)
    s.set_defaults(func=cmd_deuber)

    s = sub.add_parser("cclo-enum", parents=[common], help="all converging convex orders on a tree")
    s.add_argument("tree")
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    s.set_defaults(func=cmd_cclo_enum)

    s = sub.add_parser("cclo-check", parents=[common], help="check an order document")
    s.add_argument("order")
    s.set_defaults(func=cmd_cclo_check)

    s = sub.add_parser("pi", parents=[common], help="order induced by a configuration")
    s.add_argument("config")
    s.set_defaults(func=cmd_pi)

    s = sub.add_parser("realize", parents=[common], help="configuration realizing an order")
    s.add_argument("order")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("collapse", parents=[common], help="two configurations with the same order")
    s.add_argument("tree")
    s.add_argument("x0", type=int)
    s.add_argument("x1", type=int)
    s.set_defaults(func=cmd_collapse)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (SearchExhausted, ChainError) as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (KaleidoError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
