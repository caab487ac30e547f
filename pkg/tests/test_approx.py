import pytest
from hypothesis import given, strategies as st

import brute
from dualitykit import ApproximationSpace, BinaryRelation, Kind, check_kind
from dualitykit.approx import (
    RoughSet,
    approximations,
    build_rough_set_algebra,
    identity_rel,
    lift_square,
    necessity_op,
    possibility_op,
    rel_compose,
    rel_converse,
    rough_join,
    rough_meet,
    rough_plus,
    rough_star,
    sufficiency_op,
)
from dualitykit.errors import DomainError

fs = frozenset
S4 = ApproximationSpace([1, 2, 3, 4], [[1, 2], [3, 4]])
S3 = ApproximationSpace([1, 2, 3], [[1, 2], [3]])


def full(xs):
    return [(x, y) for x in xs for y in xs]


def test_approximations_of_mixed_set():
    assert approximations(S4, {1, 2, 3}) == RoughSet(fs({1, 2}), fs({1, 2, 3, 4}))


def test_approximations_of_empty_and_definable_sets():
    assert approximations(S4, set()) == RoughSet(fs(), fs())
    assert approximations(S4, {1, 2}) == RoughSet(fs({1, 2}), fs({1, 2}))


def test_approximations_reject_outside_elements():
    with pytest.raises(DomainError):
        approximations(S4, {5})


def test_possibility_operator():
    assert possibility_op(BinaryRelation([1, 2], full([1, 2])), {1}) == {1, 2}
    assert possibility_op(BinaryRelation([1, 2], full([1, 2])), set()) == fs()
    assert possibility_op(BinaryRelation([1, 2], []), {1, 2}) == fs()


def test_necessity_operator():
    theta = S4.theta
    assert necessity_op(theta, {1, 2, 3}) == {1, 2}
    assert necessity_op(theta, {1, 2, 3, 4}) == {1, 2, 3, 4}
    assert necessity_op(BinaryRelation([1, 2], []), {1}) == {1, 2}


def test_sufficiency_operator():
    assert sufficiency_op(BinaryRelation([1, 2], [(1, 2)]), set()) == {1, 2}
    assert sufficiency_op(BinaryRelation([1, 2], [(1, 1), (1, 2)]), {1, 2}) == {1}
    assert sufficiency_op(BinaryRelation([1, 2], full([1, 2])), {2}) == {1, 2}


def test_operators_reject_foreign_sets():
    with pytest.raises(DomainError):
        possibility_op(BinaryRelation([1, 2], []), {3})


def test_rough_lattice_operations():
    a = S4.rough_set({1, 2}, {1, 2, 3, 4})
    bottom, top = S4.rough_set((), ()), S4.rough_set(S4.universe, S4.universe)
    assert rough_join(a, bottom) == a
    assert rough_meet(a, top) == a
    assert rough_join(S4.rough_set((), {1, 2}), S4.rough_set({3, 4}, {3, 4})) == RoughSet(fs({3, 4}), fs({1, 2, 3, 4}))


def test_rough_operations_reject_mixed_spaces():
    with pytest.raises(DomainError, match="different"):
        rough_join(S3.rough_set((), ()), S4.rough_set((), ()))


def test_rough_pseudocomplements():
    everything = fs(S3.universe)
    assert rough_star(S3.rough_set((), ())) == RoughSet(everything, everything)
    assert rough_plus(S3.rough_set(everything, everything)) == RoughSet(fs(), fs())
    a = S3.rough_set((), {1, 2})
    assert rough_star(a) == RoughSet(fs({3}), fs({3}))
    assert rough_plus(a) == RoughSet(everything, everything)


def test_rough_set_validation():
    assert not S3.is_rough_set({3}, {3, 1})
    assert "singleton" in S3.rough_set_violation((), {3})


def test_rough_set_algebra_sizes():
    assert len(build_rough_set_algebra(ApproximationSpace.identity([1]))) == 2
    chain = build_rough_set_algebra(ApproximationSpace.total([1, 2]))
    assert [r.label() for r in chain.elements] == ["<{},{}>", "<{},{1,2}>", "<{1,2},{1,2}>"]
    boolean = build_rough_set_algebra(ApproximationSpace.identity([1, 2]))
    assert len(boolean) == 4 and boolean.lattice.is_boolean


def test_lift_square():
    assert lift_square(ApproximationSpace.identity([1, 2])) == ApproximationSpace.identity(full([1, 2]))
    assert [len(b) for b in lift_square(ApproximationSpace.total([1, 2])).blocks] == [4]
    assert sorted(len(b) for b in lift_square(S3).blocks) == [1, 2, 2, 4]


def test_relation_algebra_on_pairs():
    r = BinaryRelation([1, 2, 3], [(1, 2)])
    s = BinaryRelation([1, 2, 3], [(2, 3)])
    assert rel_compose(r, s).pairs == {(1, 3)}
    assert rel_compose(r, identity_rel([1, 2, 3])) == r
    assert rel_converse(rel_converse(r)) == r
    with pytest.raises(DomainError, match="carrier"):
        rel_compose(r, BinaryRelation([1, 2], []))


# -- properties --------------------------------------------------------------------------

@st.composite
def spaces(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    blocks = {}
    for x, b in zip(range(1, n + 1), labels):
        blocks.setdefault(b, []).append(x)
    return ApproximationSpace(range(1, n + 1), blocks.values())


@given(spaces(), st.data())
def test_approximations_match_brute_force(s, data):
    y = data.draw(st.sets(st.sampled_from(s.universe)))
    blocks = [fs(b) for b in s.blocks]
    r = s.approximations(y)
    assert (r.lower, r.upper) == (brute.lower(blocks, fs(y)), brute.upper(blocks, fs(y)))
    assert possibility_op(s.theta, y) == r.upper
    assert necessity_op(s.theta, y) == r.lower


@given(spaces())
def test_rough_set_algebra_carrier_and_laws(s):
    alg = build_rough_set_algebra(s)
    blocks = [fs(b) for b in s.blocks]
    assert {(r.lower, r.upper) for r in alg.elements} == brute.rough_sets(s.universe, blocks)
    assert {(r.lower, r.upper) for r in s.rough_sets()} == brute.rough_sets(s.universe, blocks)
    assert check_kind(alg, Kind.RDSA).passed
    for r in alg.elements:
        assert alg.op("star", r) == RoughSet(*brute.rough_star(s.universe, (r.lower, r.upper)))
        assert alg.op("plus", r) == RoughSet(*brute.rough_plus(s.universe, (r.lower, r.upper)))


@given(spaces(max_size=4), st.data())
def test_relational_operations_match_brute_force(s, data):
    pairs = full(s.universe)
    r = fs(data.draw(st.sets(st.sampled_from(pairs))))
    q = fs(data.draw(st.sets(st.sampled_from(pairs))))
    br, bq = BinaryRelation(s.universe, r), BinaryRelation(s.universe, q)
    assert rel_compose(br, bq).pairs == brute.compose(r, q)
    assert rel_converse(br).pairs == brute.converse(r)
    y = fs(data.draw(st.sets(st.sampled_from(s.universe))))
    assert sufficiency_op(br, y) == brute.sufficiency(r, s.universe, y)
    assert possibility_op(br, y) == brute.possibility(r, s.universe, y)


@pytest.mark.parametrize("n", range(1, 6))
def test_rough_set_carriers_on_every_partition(n):
    universe = list(range(1, n + 1))
    for blocks in brute.set_partitions(universe):
        s = ApproximationSpace(universe, blocks)
        got = {(r.lower, r.upper) for r in s.rough_sets()}
        assert got == brute.rough_sets(universe, [fs(b) for b in blocks])
