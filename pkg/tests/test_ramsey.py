import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaleido.decorated import build_Ah, is_dec_embedding
from kaleido.errors import ChainError, Inconclusive, InputError, SearchExhausted
from kaleido.ramsey import (
    ArrowInstance,
    Chain,
    ChainLevel,
    ColoringAssignment,
    ah_size,
    build_chain,
    copy_table,
    decide_arrow,
    deuber_explore,
    find_mono_copy,
    proof_follow_mono,
    verify_chain,
    witness_search,
)
from kaleido.relstruct import constant_only, pointed_linear_order

from oracles import brute_arrow

C2, C3 = constant_only(2), constant_only(3)
L2, L3 = pointed_linear_order(2), pointed_linear_order(3)

INSTANCES = [
    (C2, 2, 1, 0, 2, False),
    (C2, 1, 1, 0, 2, False),
    (C2, 3, 1, 0, 3, False),
    (C3, 1, 1, 0, 2, False),
    (C3, 2, 1, 0, 2, False),
    (C3, 2, 1, 0, 2, True),
    (L2, 2, 1, 0, 2, False),
    (L3, 1, 1, 0, 2, False),
    (L3, 2, 1, 0, 2, False),
    (L3, 2, 1, 0, 2, True),
    (C2, 4, 2, 1, 2, True),
]


def _inst(a, hc, hb, ha, k, rooted):
    return ArrowInstance(build_Ah(a, hc), build_Ah(a, hb), build_Ah(a, ha), k, rooted)


@pytest.mark.parametrize("case", INSTANCES, ids=lambda s: f"{len(s[0])}-{s[1]}{s[2]}{s[3]}-k{s[4]}-{'r' if s[5] else 'u'}")
def test_decide_arrow_matches_enumeration(case):
    inst = _inst(*case)
    verdict = decide_arrow(inst)
    holds, bad = brute_arrow(inst.c, inst.b, inst.a, inst.k, inst.rooted)
    assert verdict.holds == holds
    if not holds:
        assert verdict.bad_coloring.colors == bad


def test_negative_instance_has_replayable_bad_coloring():
    inst = _inst(C2, 1, 1, 0, 2, False)
    v = decide_arrow(inst)
    assert not v.holds
    tab = copy_table(inst.c, inst.b, inst.a)
    assert all(len(tab.colors_of(j, v.bad_coloring)) > 1 for j in range(len(tab.b_embs)))
    with pytest.raises(SearchExhausted):
        find_mono_copy(inst.c, inst.b, inst.a, v.bad_coloring, table=tab)


@pytest.mark.parametrize("threads", [2, 4, 8])
def test_threads_do_not_change_the_result(threads):
    inst = _inst(C3, 2, 1, 0, 2, False)
    one = decide_arrow(inst, threads=1)
    many = decide_arrow(inst, threads=threads)
    assert (one.holds, one.bad_coloring, one.stats) == (many.holds, many.bad_coloring, many.stats)


def test_budget_gives_inconclusive():
    inst = _inst(C2, 4, 2, 1, 2, False)
    with pytest.raises(Inconclusive) as err:
        decide_arrow(inst, budget=3)
    assert err.value.stats["nodes"] > 3


def test_degenerate_instances():
    a0 = build_Ah(C2, 0)
    # no B-copy at all: every coloring is bad
    v = decide_arrow(ArrowInstance(build_Ah(C2, 0), build_Ah(C2, 1), a0))
    assert not v.holds and set(v.bad_coloring.colors) == {0}
    assert decide_arrow(_inst(C2, 2, 1, 0, 1, False)).holds
    # B-copies containing a single A-copy make the arrow trivial
    assert decide_arrow(ArrowInstance(build_Ah(C2, 2), a0, a0)).holds
    with pytest.raises(InputError):
        decide_arrow(ArrowInstance(build_Ah(C2, 0), build_Ah(C2, 1), build_Ah(C2, 1)))


def test_instance_signatures_must_agree():
    with pytest.raises(InputError):
        ArrowInstance(build_Ah(C2, 1), build_Ah(L2, 1), build_Ah(C2, 0))


def test_coloring_assignment_validation():
    with pytest.raises(InputError):
        ColoringAssignment(2, (0, 2))
    with pytest.raises(InputError):
        ColoringAssignment(0, ())
    assert ColoringAssignment.constant(3, 2, 1).colors == (1, 1, 1)


@settings(max_examples=40)
@given(st.data())
def test_mono_copy_is_monochromatic(data):
    c, b, a = build_Ah(C2, 3), build_Ah(C2, 1), build_Ah(C2, 0)
    tab = copy_table(c, b, a)
    gamma = ColoringAssignment(2, data.draw(st.lists(st.integers(0, 1), min_size=len(tab.a_embs), max_size=len(tab.a_embs))))
    g = find_mono_copy(c, b, a, gamma, table=tab)
    assert is_dec_embedding(g.map, b, c)
    cols = {gamma[tab.index[g.compose(e).pairs]] for e in tab.ab_embs}
    assert len(cols) == 1


def test_mono_copy_rejects_wrong_length():
    with pytest.raises(InputError):
        find_mono_copy(build_Ah(C2, 3), build_Ah(C2, 1), build_Ah(C2, 0), ColoringAssignment(2, (0,)))


@pytest.mark.parametrize("n, h, size", [(2, 0, 2), (2, 3, 5), (3, 2, 8), (3, 3, 16)])
def test_ah_size(n, h, size):
    assert ah_size(n, h) == size == len(build_Ah(constant_only(n), h))


def test_witness_search_constant_only():
    w = witness_search(build_Ah(C2, 1), build_Ah(C2, 0), max_vertices=12)
    assert w.verdict.holds
    assert decide_arrow(ArrowInstance(w.tree, build_Ah(C2, 1), build_Ah(C2, 0))).holds
    assert all(not held for *_, held in w.tried[:-1])


def test_witness_search_gives_up():
    with pytest.raises(Inconclusive):
        witness_search(build_Ah(C2, 1), build_Ah(C2, 0), max_vertices=3)


def _chain(a, ns, u=None):
    u = u if u is not None else build_Ah(a, 1)
    return Chain([ChainLevel(a, n) for n in ns], a, 1, u)


def test_chain_building_and_verification():
    ch = build_chain(build_Ah(C2, 1), C2, 1)
    assert [lv.n for lv in ch.levels] == [3, 1, 0]
    assert all(v.holds for _, v in verify_chain(ch))


def test_chain_validation():
    with pytest.raises(InputError):
        _chain(C2, [3, 1])
    with pytest.raises(InputError):
        Chain([ChainLevel(C2, 0)], C2, 0, build_Ah(C2, 1))


@pytest.mark.parametrize("alphabet", [C2, L2], ids=["const", "lo"])
def test_proof_following_agrees_with_direct_search(alphabet):
    ch = _chain(alphabet, [3, 1, 0])
    t, a_ell = ch.target(), ch.colored()
    tab = copy_table(t, ch.u, a_ell)
    rng = random.Random(7)
    for _ in range(12):
        gamma = ColoringAssignment(2, [rng.randrange(2) for _ in tab.a_embs])
        g = proof_follow_mono(ch, gamma)
        assert is_dec_embedding(g.map, ch.u, t)
        assert len({gamma[tab.index[g.compose(e).pairs]] for e in tab.ab_embs}) == 1
        find_mono_copy(t, ch.u, a_ell, gamma, table=tab)


def test_corrupted_chain_fails_at_level_zero():
    ch = _chain(C2, [2, 1, 0])
    assert not verify_chain(ch)[0][1].holds
    t, a_ell = ch.target(), ch.colored()
    tab = copy_table(t, ch.u, a_ell)
    bad = decide_arrow(ArrowInstance(t, build_Ah(C2, 2), a_ell, 2, True)).bad_coloring
    rooted = copy_table(t, build_Ah(C2, 2), a_ell, rooted=True)
    # lift the rooted bad coloring to all embeddings
    colors = [bad[rooted.index[e.pairs]] if e.pairs in rooted.index else 0 for e in tab.a_embs]
    gamma = ColoringAssignment(2, colors)
    with pytest.raises(ChainError) as err:
        proof_follow_mono(ch, gamma)
    assert err.value.level == 0


def test_deuber_small_alphabet():
    rep = deuber_explore(C2, 1)
    assert rep.m == 2 and rep.bound == 1 and not rep.within_bound
    assert rep.attempts[0] == (1, False, rep.attempts[0][2])
    d = rep.as_dict()
    assert d["bound_2h_minus_1"] == 1 and d["m"] == 2
