"""Rotation discovery, elimination, the precedence poset, and closed sets."""

from __future__ import annotations

import pytest
from hypothesis import given, settings

from conftest import branch_four, identity_three, instances, two_by_two
from stablecut import (
    ContractViolation,
    Matching,
    Rotation,
    all_closed_sets,
    all_stable_matchings,
    build_poset,
    closed_set_to_matching,
    dominates,
    eliminate,
    enumerate_rotations,
    exposed_rotations,
    gale_shapley,
    is_stable,
    rotation_count_limit,
)

SWAP = Rotation(((0, 0), (1, 1)))  # the single rotation of two_by_two


def test_exposed_in_boy_optimal():
    found = exposed_rotations(two_by_two(), Matching((0, 1)))
    assert [r.pairs for r in found] == [SWAP.pairs]


def test_girl_optimal_exposes_nothing():
    assert exposed_rotations(two_by_two(), Matching((1, 0))) == []


def test_unique_matching_exposes_nothing():
    assert exposed_rotations(identity_three(), Matching((0, 1, 2))) == []


def test_eliminate_swaps_the_couples():
    after = eliminate(two_by_two(), Matching((0, 1)), SWAP)
    assert after.partner_of_boy == (1, 0)


def test_eliminate_rejects_unexposed_rotation():
    with pytest.raises(ContractViolation, match="not matched here"):
        eliminate(two_by_two(), Matching((1, 0)), SWAP)


def test_eliminate_rejects_wrong_cycle():
    # Pairs are matched but the successor structure does not close.
    rho = Rotation(((0, 3), (2, 1)))
    inst = branch_four()
    with pytest.raises(ContractViolation, match="not exposed"):
        eliminate(inst, gale_shapley(inst, "boys"), rho)


def test_enumerate_rotations_two_by_two():
    rots = enumerate_rotations(two_by_two())
    assert [(r.id, r.pairs) for r in rots] == [(0, SWAP.pairs)]


def test_enumerate_rotations_identity_three():
    assert enumerate_rotations(identity_three()) == []


def test_rotation_count_limit_values():
    assert rotation_count_limit(1) == 1
    assert rotation_count_limit(4) == 10


def test_branch_four_rotations_and_edges():
    poset = build_poset(branch_four())
    assert [r.pairs for r in poset.rotations] == [
        ((0, 3), (1, 2)),
        ((0, 2), (3, 0)),
        ((1, 3), (2, 1)),
    ]
    assert sorted(poset.edges) == [(0, 1), (0, 2)]
    assert poset.preds == (frozenset(), frozenset({0}), frozenset({0}))
    assert poset.topo_order == (0, 1, 2)


def test_poset_two_by_two_has_no_edges():
    poset = build_poset(two_by_two())
    assert len(poset.rotations) == 1
    assert poset.edges == frozenset()


def test_poset_identity_three_is_empty():
    poset = build_poset(identity_three())
    assert poset.rotations == ()
    assert poset.edges == frozenset()


def test_is_closed():
    poset = build_poset(branch_four())
    assert poset.is_closed(frozenset())
    assert poset.is_closed(frozenset({0, 2}))
    assert not poset.is_closed(frozenset({1}))


def test_closed_set_to_matching_branch_four():
    inst = branch_four()
    poset = build_poset(inst)
    expected = {
        frozenset(): (3, 2, 1, 0),
        frozenset({0}): (2, 3, 1, 0),
        frozenset({0, 1}): (0, 3, 1, 2),
        frozenset({0, 2}): (2, 1, 3, 0),
        frozenset({0, 1, 2}): (0, 1, 3, 2),
    }
    for closed, partners in expected.items():
        assert closed_set_to_matching(inst, poset, closed).partner_of_boy == partners


def test_closed_set_to_matching_rejects_open_set():
    inst = branch_four()
    poset = build_poset(inst)
    with pytest.raises(ContractViolation, match="not predecessor-closed"):
        closed_set_to_matching(inst, poset, {1})


def test_closed_set_to_matching_rejects_bad_id():
    inst = two_by_two()
    poset = build_poset(inst)
    with pytest.raises(ValueError, match="out of range"):
        closed_set_to_matching(inst, poset, {7})


def test_all_closed_sets_two_by_two():
    poset = build_poset(two_by_two())
    sets, truncated = all_closed_sets(poset, 10)
    assert sets == [frozenset(), frozenset({0})]
    assert not truncated


def test_all_closed_sets_branch_four_order():
    poset = build_poset(branch_four())
    sets, truncated = all_closed_sets(poset, 10)
    assert sets == [
        frozenset(),
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({0, 2}),
        frozenset({0, 1, 2}),
    ]
    assert not truncated


def test_all_closed_sets_cap():
    poset = build_poset(branch_four())
    sets, truncated = all_closed_sets(poset, 2)
    assert len(sets) == 2
    assert truncated
    with pytest.raises(ValueError, match="cap"):
        all_closed_sets(poset, 0)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_closed_sets_biject_with_stable_matchings(inst):
    """Every predecessor-closed rotation set generates a distinct stable
    matching and together they generate all of them."""
    poset = build_poset(inst)
    sets, truncated = all_closed_sets(poset, 100_000)
    assert not truncated
    generated = {
        closed_set_to_matching(inst, poset, c).partner_of_boy for c in sets
    }
    oracle = {m.partner_of_boy for m in all_stable_matchings(inst)}
    assert len(generated) == len(sets)
    assert generated == oracle


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_elimination_chain_walks_the_whole_lattice(inst):
    """Repeatedly eliminating an exposed rotation moves girl-ward through
    stable matchings and ends at the girl-optimal one."""
    current = gale_shapley(inst, "boys")
    bottom = gale_shapley(inst, "girls")
    girl_rank = inst.girl_rank
    boy_rank = inst.boy_rank
    steps = 0
    while True:
        exposed = exposed_rotations(inst, current)
        if not exposed:
            break
        after = eliminate(inst, current, exposed[0])
        assert is_stable(inst, after)
        assert dominates(current, after, inst)
        for g in range(inst.n):
            assert (
                girl_rank[g][after.partner_of_girl[g]]
                <= girl_rank[g][current.partner_of_girl[g]]
            )
        for b in range(inst.n):
            assert (
                boy_rank[b][after.partner_of_boy[b]]
                >= boy_rank[b][current.partner_of_boy[b]]
            )
        current = after
        steps += 1
        assert steps <= rotation_count_limit(inst.n)
    assert current == bottom


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_rotation_count_within_bound(inst):
    assert len(enumerate_rotations(inst)) <= rotation_count_limit(inst.n)


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6))
def test_simultaneously_exposed_rotations_are_disjoint(inst):
    current = gale_shapley(inst, "boys")
    exposed = exposed_rotations(inst, current)
    seen: set[int] = set()
    for rho in exposed:
        boys = set(rho.boys())
        assert not (seen & boys)
        seen |= boys
