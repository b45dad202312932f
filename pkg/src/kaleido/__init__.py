"""Finite combinatorics of decorated rooted trees: embeddings, colorings,
partition arrows and convex converging orders."""

__version__ = "0.1.0"

from .errors import AmalgamationFailure, ChainError, Inconclusive, InputError, KaleidoError, SearchExhausted
from .trees import Component, RootedTree, Tree, between, component_of, generated_subtree, insert_between, median, meet
from .relstruct import RelStructure, Signature, amalgamate, struct_automorphisms, struct_embeddings
from .decorated import DecEmbedding, DecoratedTree, build_Ah, dec_automorphisms, dec_embeddings, dec_generated, embed_into_Ah
from .coloring import ColoredTree, check_cocycle_identity, derive_root_coloring, kaleidoscopic_extend, local_action
from .ramsey import ArrowInstance, ColoringAssignment, decide_arrow, deuber_explore, find_mono_copy, proof_follow_mono, witness_search
from .cclo import TreeLinearOrder, collapse_pair, enumerate_cclo, is_converging, is_convex, pi_order, realize_cclo

__all__ = [name for name in dir() if not name.startswith("_")]
