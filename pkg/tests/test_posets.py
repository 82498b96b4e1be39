"""Posets, heaps, ideal statistics, and the heap-side checks."""

from fractions import Fraction

import pytest

from coxbalance import coxgen
from coxbalance.coxgen import INF, NotReducedError, WeylSystem, build_system, cycle_matrix, path_matrix
from coxbalance.posets import (
    LabeledPoset,
    PosetSizeError,
    branching_balance_check,
    claw_chain,
    heap_from_word,
    heap_inversion_map,
    heap_respects_diagram,
    is_isomorphic,
    poset_dot,
    poset_from_covers,
    poset_from_json,
    poset_json,
)
from coxbalance.rootsys import build_root_system
from coxbalance import convex, weyl

THIRD = Fraction(1, 3)


def brute_force_ideals(poset):
    """Oracle: filter all subsets for downward closure."""
    out = []
    for mask in range(1 << poset.n):
        ok = True
        for i in range(poset.n):
            if (mask >> i) & 1:
                for j in range(poset.n):
                    if poset.leq[j][i] and not (mask >> j) & 1:
                        ok = False
        if ok:
            out.append(mask)
    return out


def test_poset_validation():
    with pytest.raises(ValueError):
        LabeledPoset(2, ((True, True), (True, True)))  # not antisymmetric
    with pytest.raises(ValueError):
        LabeledPoset(2, ((False, False), (False, True)))  # not reflexive
    chain = poset_from_covers(3, [(0, 1), (1, 2)])
    assert chain.covers() == [(0, 1), (1, 2)]
    assert chain.leq[0][2]


def test_small_ideal_counts():
    antichain = poset_from_covers(2, [])
    assert antichain.ideal_count() == 4
    chain = poset_from_covers(2, [(0, 1)])
    assert chain.ideal_count() == 3
    assert chain.ideal_fraction(0) == Fraction(2, 3)


@pytest.mark.parametrize("covers,n", [
    ([], 4),
    ([(0, 1), (1, 2)], 3),
    ([(0, 2), (1, 2), (2, 3)], 4),
    ([(0, 1), (0, 2), (3, 2)], 4),
])
def test_ideal_enumeration_against_brute_force(covers, n):
    poset = poset_from_covers(n, covers)
    got = sorted(
        sum(1 << i for i in ideal) for ideal in poset.order_ideals()
    )
    assert got == sorted(brute_force_ideals(poset))


def test_ideal_cap():
    big = poset_from_covers(41, [])
    with pytest.raises(PosetSizeError, match="40"):
        big.ideal_count()
    small = poset_from_covers(16, [])
    with pytest.raises(PosetSizeError):
        small.ideal_count(cap=12)
    assert small.ideal_count(cap=None) == 2 ** 16


def test_heap_a2():
    sys = WeylSystem(build_root_system("A", 2))
    heap = heap_from_word(sys, [1, 2])
    # the later letter s2 sits at the bottom, s1 on top
    assert heap.covers() == [(1, 0)]
    assert heap.labels == (1, 2)
    assert heap.balance() == THIRD


def test_heap_b3_shape():
    sys = WeylSystem(build_root_system("B", 3))
    heap = heap_from_word(sys, [3, 2, 3, 1])
    # s1 and the lower s3 sit below s2, which sits below the upper s3
    assert sorted(heap.covers()) == [(1, 0), (2, 1), (3, 1)]
    assert heap.labels == (3, 2, 3, 1)
    assert is_isomorphic(heap, claw_chain(2, 2))


def test_heap_affine_four_cycle():
    sys = build_system(cycle_matrix(4))
    heap = heap_from_word(sys, [2, 4, 1, 3])
    assert heap.ideal_count() == 7
    assert heap.balance() == Fraction(2, 7)
    # complete bipartite: both of s1, s3 below both of s2, s4
    assert sorted(heap.covers()) == [(2, 0), (2, 1), (3, 0), (3, 1)]


def test_heap_rejects_non_reduced():
    sys = WeylSystem(build_root_system("A", 2))
    with pytest.raises(NotReducedError):
        heap_from_word(sys, [1, 1])


def test_heap_invariant_under_commutation_class():
    b3 = WeylSystem(build_root_system("B", 3))
    base = heap_from_word(b3, [3, 2, 3, 1])
    for word in coxgen.commutation_class(b3, [3, 2, 3, 1]):
        other = heap_from_word(b3, list(word))
        assert is_isomorphic(base, other, labeled=True)


def test_claw_chain_counts():
    for k in range(1, 9):
        for length in (1, 2, 5, 64):
            poset = claw_chain(k, length)
            assert poset.ideal_count(cap=72) == 2 ** k + length
    assert claw_chain(1, 1).covers() == [(0, 1)]
    with pytest.raises(ValueError):
        claw_chain(0, 1)


def test_claw_chain_balance_family():
    for k in range(1, 7):
        assert claw_chain(k, 2 ** (k - 1)).balance() == THIRD


def test_dual_and_fraction_complement():
    poset = claw_chain(2, 2)
    dual = poset.dual()
    fr = poset.ideal_fractions()
    fr_dual = dual.ideal_fractions()
    for x in range(poset.n):
        assert fr[x] + fr_dual[x] == 1
    assert poset.balance() == dual.balance()


def test_components_and_restrict():
    poset = poset_from_covers(5, [(0, 1), (2, 3)])
    comps = poset.components()
    assert comps == [[0, 1], [2, 3], [4]]
    sub = poset.restrict(comps[0])
    assert sub.n == 2 and sub.covers() == [(0, 1)]


def test_isomorphism():
    assert is_isomorphic(claw_chain(2, 2), claw_chain(2, 2))
    assert not is_isomorphic(claw_chain(2, 2), poset_from_covers(4, [(0, 1), (1, 2), (2, 3)]))
    # a claw and its dual are not isomorphic
    assert not is_isomorphic(claw_chain(2, 2), claw_chain(2, 2).dual())
    # labelled isomorphism distinguishes labels
    p1 = poset_from_covers(2, [(0, 1)], labels=(1, 2))
    p2 = poset_from_covers(2, [(0, 1)], labels=(2, 1))
    assert is_isomorphic(p1, p2)
    assert not is_isomorphic(p1, p2, labeled=True)


def test_figure_heaps_match_claw():
    d4 = WeylSystem(build_root_system("D", 4))
    heap = heap_from_word(d4, [4, 2, 3, 1])
    assert is_isomorphic(heap, claw_chain(2, 2))
    assert heap.balance() == THIRD


def test_heap_respects_diagram_everywhere():
    cases = [
        (WeylSystem(build_root_system("A", 3)), [1, 2, 3]),
        (WeylSystem(build_root_system("B", 3)), [3, 2, 3, 1]),
        (WeylSystem(build_root_system("D", 4)), [4, 2, 3, 1]),
        (build_system(cycle_matrix(4)), [2, 4, 1, 3]),
        (build_system(path_matrix(4, [INF, INF, INF])), [2, 3, 2, 3]),
    ]
    for sys, word in cases:
        assert heap_respects_diagram(heap_from_word(sys, word), sys)
    # a poset violating the adjacency property fails
    bad = poset_from_covers(2, [(0, 1)], labels=(1, 3))
    a3 = WeylSystem(build_root_system("A", 3))
    assert not heap_respects_diagram(bad, a3)


def test_branching_balance_check():
    sys = build_system(cycle_matrix(4))
    low = heap_from_word(sys, [2, 4, 1, 3])  # balance 2/7 < 1/3
    assert branching_balance_check(low)
    assert branching_balance_check(claw_chain(2, 2))  # vacuous at 1/3
    # non-example: a 3-chain forced below 1/3 would fail, but chains sit at 1/3;
    # build a poset with balance < 1/3 and a single cover at the frontier
    v = poset_from_covers(3, [(0, 1), (0, 2)])
    assert v.balance() == Fraction(2, 5)
    assert branching_balance_check(v)


def test_heap_inversion_map_bijection():
    """The inversion-to-heap pairing sends intervals to order ideals."""
    rs = build_root_system("D", 4)
    sys = WeylSystem(rs)
    word = (4, 2, 3, 1)
    pairs = heap_inversion_map(sys, word)
    assert len(pairs) == 4
    heap = heap_from_word(sys, word)
    ctx = convex.WeylContext(rs)
    w = ctx.from_word(word)
    c = convex.interval_left(ctx, w)
    root_to_pos = {rs.index_of(root): pos for root, pos in pairs}
    assert set(root_to_pos) == set(weyl.inversion_set(w))
    for inv in c.inv_sets:
        ideal = {root_to_pos[k] for k in inv}
        for x in ideal:  # downward closed in the heap
            for y in range(heap.n):
                if heap.leq[y][x]:
                    assert y in ideal
    with pytest.raises(ValueError):
        heap_inversion_map(sys, (2, 4, 2))  # not reduced -> not fc


def test_heap_inversion_map_identity_empty():
    sys = WeylSystem(build_root_system("A", 2))
    assert heap_inversion_map(sys, ()) == []


def test_json_round_trip():
    poset = claw_chain(2, 2)
    again = poset_from_json(poset_json(poset))
    assert again.leq == poset.leq
    assert "digraph" in poset_dot(poset)
