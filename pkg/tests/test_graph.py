import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oikpivot.graph import (
    Digraph,
    DuplicateEntry,
    NotAlternating,
    NotEulerian,
    NotPerfectMatching,
    euler_pairing,
    matching_sign,
    permutation_parity,
    symmetric_difference,
    validate_instance,
)


def test_validate_four_cycle(four_cycle):
    report = validate_instance(four_cycle)
    assert (report.eulerian, report.perfect_matching, report.m_even) == (True, True, True)


def test_validate_single_edge():
    g = Digraph(2, [(1, 2)], {0})
    report = validate_instance(g)
    assert (report.eulerian, report.perfect_matching, report.m_even) == (False, True, True)


def test_validate_parallel_pair(parallel_pair):
    report = validate_instance(parallel_pair)
    assert (report.eulerian, report.perfect_matching, report.m_even) == (True, True, True)


def test_digraph_rejects_loops_and_bad_range():
    with pytest.raises(ValueError):
        Digraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Digraph(3, [(1, 4)])
    with pytest.raises(ValueError):
        Digraph(2, [(1, 2)], {5})


def test_parity_examples():
    assert permutation_parity((1, 2, 3, 4)) == 1
    assert permutation_parity((1, 4, 2, 3)) == 1
    assert permutation_parity((1, 3, 2, 4)) == -1


def test_parity_duplicate():
    with pytest.raises(DuplicateEntry):
        permutation_parity((1, 2, 2))


def _parity_by_inversions(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@given(st.permutations(list(range(10))))
def test_parity_matches_inversion_count(seq):
    assert permutation_parity(seq) == _parity_by_inversions(seq)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=12, unique=True))
def test_parity_flips_under_transposition(seq):
    swapped = list(seq)
    swapped[0], swapped[1] = swapped[1], swapped[0]
    assert permutation_parity(swapped) == -permutation_parity(seq)


def test_matching_sign_examples(four_cycle, parallel_pair):
    assert matching_sign(four_cycle, {0, 2}) == 1
    assert matching_sign(four_cycle, {1, 3}) == -1
    assert matching_sign(parallel_pair, {1}) == -1


def test_matching_sign_requires_perfect(four_cycle):
    with pytest.raises(NotPerfectMatching):
        matching_sign(four_cycle, {0})
    with pytest.raises(NotPerfectMatching):
        matching_sign(four_cycle, {0, 1})


def test_matching_sign_invariant_under_edge_relisting(four_cycle):
    # permuting edge storage order must not change the sign
    rng = random.Random(7)
    edges = list(four_cycle.edges)
    matching = {0, 2}
    base = matching_sign(four_cycle, matching)
    for _ in range(10):
        order = list(range(4))
        rng.shuffle(order)
        g2 = Digraph(4, [edges[i] for i in order], {order.index(i) for i in matching})
        assert matching_sign(g2, g2.matched) == base


def test_matching_sign_edge_reversals(four_cycle):
    # flipping one matched edge flips the sign; flipping two restores it
    edges = list(four_cycle.edges)
    one = list(edges)
    one[0] = (2, 1)
    assert matching_sign(Digraph(4, one, {0, 2}), {0, 2}) == -1
    two = list(one)
    two[2] = (4, 3)
    assert matching_sign(Digraph(4, two, {0, 2}), {0, 2}) == 1


def test_euler_pairing_four_cycle(four_cycle):
    pairing = euler_pairing(four_cycle)
    assert pairing.successor == {0: 1, 1: 2, 2: 3, 3: 0}


def test_euler_pairing_parallel_pair(parallel_pair):
    pairing = euler_pairing(parallel_pair)
    assert pairing.successor == {0: 1, 1: 0}


def test_euler_pairing_figure_eight():
    g = Digraph(3, [(1, 2), (2, 1), (1, 3), (3, 1)])
    pairing = euler_pairing(g)
    # bijection at node 1 between its two in- and two out-edges
    heads_in_1 = {i for i, e in enumerate(g.edges) if e.head == 1}
    assert {pairing.successor[i] for i in heads_in_1} == {0, 2}
    assert sorted(pairing.successor) == [0, 1, 2, 3]
    assert sorted(pairing.successor.values()) == [0, 1, 2, 3]


def test_euler_pairing_rejects_unbalanced():
    with pytest.raises(NotEulerian):
        euler_pairing(Digraph(2, [(1, 2)]))


def test_euler_pairing_tour_traverses_every_edge():
    rng = random.Random(3)
    from oikpivot.gen import gen_euler

    for _ in range(20):
        g = gen_euler(8, rng.randint(0, 5), rng)
        pairing = euler_pairing(g)
        # successors at a node leave that node
        for i, j in pairing.successor.items():
            assert g.edges[i].head == g.edges[j].tail
        # walking successors visits every edge exactly once per tour
        seen = set()
        for start in range(len(g.edges)):
            if start in seen:
                continue
            e = start
            while e not in seen:
                seen.add(e)
                e = pairing.successor[e]
            assert e == start
        assert seen == set(range(len(g.edges)))


def test_symmetric_difference_four_cycle(four_cycle):
    assert symmetric_difference(four_cycle, {0, 2}, {0, 1, 2, 3}) == {1, 3}
    assert symmetric_difference(four_cycle, {0, 2}, set()) == {0, 2}


def test_symmetric_difference_rejects_non_alternating(four_cycle):
    with pytest.raises(NotAlternating):
        symmetric_difference(four_cycle, {0, 2}, {0, 1})


def test_symmetric_difference_involution(four_cycle):
    cycle = {0, 1, 2, 3}
    once = symmetric_difference(four_cycle, {0, 2}, cycle)
    assert symmetric_difference(four_cycle, once, cycle) == {0, 2}


def test_symmetric_difference_random_revalidates():
    rng = random.Random(11)
    from oikpivot.gen import gen_euler
    from oikpivot.switchcycle import find_opposite_matching

    for _ in range(25):
        g = gen_euler(10, rng.randint(0, 6), rng)
        result = find_opposite_matching(g)
        again = symmetric_difference(g, g.matched, result.cycle_edges)
        assert validate_instance(g.with_matching(again)).perfect_matching
