import pytest
from hypothesis import given, settings, strategies as st

import brute
from dualitykit import (
    ApproximationSpace,
    FiniteAlgebra,
    Frame,
    Kind,
    Poset,
    check_kind,
    cm,
    cs,
    frame_map,
    powerset_algebra,
    roundtrip_algebra,
    roundtrip_frame,
    stone_map,
)
from dualitykit.algebra import derive_join_meet, prime_filters
from dualitykit.duality import frame_report
from dualitykit.errors import DomainError, PreconditionError

fs = frozenset
E, ONE, TWO, BOTH = fs(), fs({1}), fs({2}), fs({1, 2})


def total(xs):
    return Frame.plain(xs, [(x, y) for x in xs for y in xs])


CHAIN2 = Frame.ordered(Poset.chain("ab"))
CHAIN3 = Frame.ordered(Poset.chain("abc"))
SWAP = Frame.de_morgan(Poset.antichain("ab"), {"a": "b", "b": "a"})


def three_chain_rdsa():
    lat = derive_join_meet(Poset.chain("0a1"))
    return FiniteAlgebra(lat, Kind.RDSA, {"star": {"0": "1", "a": "0", "1": "0"}, "plus": {"0": "1", "a": "1", "1": "0"}})


# -- complex algebras -------------------------------------------------------------------

def test_cm_of_total_equivalence():
    a = cm(total([1, 2]), Kind.MONADIC)
    assert len(a) == 4 and a.op("f", ONE) == BOTH


def test_cm_of_two_chain_rdsa():
    a = cm(CHAIN2, Kind.RDSA)
    assert a.labels == ["{}", "{b}", "{a,b}"]
    assert a.op("star", fs("b")) == E
    assert a.op("plus", fs("b")) == fs("ab")


def test_cm_of_swap_de_morgan():
    a = cm(SWAP, Kind.DEMORGAN)
    assert a.op("neg", fs("a")) == fs("a")
    assert check_kind(a).passed


def test_cm_rejects_wrong_frame_shape():
    with pytest.raises(DomainError):
        cm(CHAIN2, Kind.MONADIC)
    with pytest.raises(DomainError):
        cm(total([1]), Kind.DSA)


def test_cm_rejects_frames_violating_their_invariants():
    with pytest.raises(PreconditionError):
        cm(Frame.plain([1, 2], [(1, 2)]), Kind.MONADIC)
    with pytest.raises(PreconditionError):
        cm(CHAIN3, Kind.RDSA)


def test_three_chain_breaks_the_short_chain_condition_at_the_bottom():
    rep = frame_report(CHAIN3, Kind.RDSA)
    assert rep.failed_laws() == ["rdsa-frame.RDS"]
    assert rep.law("rdsa-frame.RDS").witness == (("x", "a"), ("y", "b"), ("z", "c"))


# -- canonical frames --------------------------------------------------------------------

def test_cs_of_total_monadic_algebra():
    f = cs(cm(total([1, 2]), Kind.MONADIC))
    assert len(f) == 2 and len(f.rel) == 4


def test_cs_of_three_chain_is_two_chain():
    f = cs(three_chain_rdsa())
    assert len(f) == 2 and len(f.order.strict_pairs()) == 1


def test_cs_of_two_element_de_morgan():
    lat = derive_join_meet(Poset.chain("01"))
    a = FiniteAlgebra(lat, Kind.DEMORGAN, {"neg": {"0": "1", "1": "0"}})
    f = cs(a)
    (point,) = f.points
    assert f.functions["N"][point] == point


def test_cs_requires_the_kind_laws():
    bad = powerset_algebra([1, 2], Kind.MONADIC, {"f": {E: ONE, ONE: ONE, TWO: BOTH, BOTH: BOTH}})
    with pytest.raises(PreconditionError):
        cs(bad)


# -- maps ------------------------------------------------------------------------------------

def test_stone_map_bounds_and_atoms():
    b = cm(total([1, 2]), Kind.MONADIC)
    h = stone_map(b)
    assert h.map[BOTH] == fs(h.target.top)
    assert h.map[BOTH] == fs(cs(b).points)
    assert h.map[E] == E
    (image,) = h.map[ONE]
    assert fs({ONE, BOTH}) == image


def test_frame_map_on_singleton():
    k = frame_map(Frame.plain([1], [(1, 1)]), Kind.MONADIC)
    assert k.map == {1: fs({ONE})}


def test_frame_map_of_total_relation():
    assert frame_map(total([1, 2]), Kind.MONADIC).map[1] == fs({ONE, BOTH})


def test_frame_map_of_two_chain():
    k = frame_map(CHAIN2, Kind.BDL).map
    assert k["a"] == fs({fs("ab")})
    assert k["b"] == fs({fs("b"), fs("ab")})


# -- roundtrips ------------------------------------------------------------------------------

def test_identity_monadic_roundtrip_is_iso():
    b = powerset_algebra([1], Kind.MONADIC, {"f": {E: E, ONE: ONE}})
    r = roundtrip_algebra(b)
    assert r.passed and r.iso_flag


def test_three_chain_roundtrip():
    r = roundtrip_algebra(three_chain_rdsa())
    assert r.passed and r.iso_flag
    assert dict(r.sizes) == {"source": 3, "canonical": 2, "target": 3}


@pytest.mark.parametrize("kind", [Kind.MONADIC, Kind.POSSIBILITY, Kind.SUFFICIENCY, Kind.BDL, Kind.RDSA, Kind.DEMORGAN])
def test_singleton_frames_roundtrip(kind):
    if kind in (Kind.BDL, Kind.RDSA):
        f = Frame.ordered(Poset.antichain([1]))
    elif kind is Kind.DEMORGAN:
        f = Frame.de_morgan(Poset.antichain([1]), {1: 1})
    else:
        f = Frame.plain([1], [(1, 1)])
    assert roundtrip_frame(f, kind).passed


def test_partition_frame_roundtrip():
    f = ApproximationSpace([1, 2, 3], [[1, 2], [3]]).as_frame()
    assert roundtrip_frame(f, Kind.MONADIC).passed


def test_two_chain_rdsa_frame_roundtrip():
    r = roundtrip_frame(CHAIN2, Kind.RDSA)
    assert r.passed and dict(r.sizes)["algebra"] == 3


def test_four_chain_bdl_roundtrip_is_iso():
    lat = derive_join_meet(Poset.chain("0ab1"))
    r = roundtrip_algebra(FiniteAlgebra(lat, Kind.BDL))
    assert r.passed and r.iso_flag


# -- properties over random small frames ----------------------------------------------------

relations = st.integers(1, 3).flatmap(
    lambda n: st.sets(st.tuples(st.integers(1, n), st.integers(1, n))).map(lambda r: (n, r)))


@settings(max_examples=60, deadline=None)
@given(relations)
def test_sufficiency_cm_matches_brute_force_and_roundtrips(nr):
    n, rel = nr
    xs = list(range(1, n + 1))
    f = Frame.plain(xs, rel)
    a = cm(f, Kind.SUFFICIENCY)
    for y in brute.subsets(xs):
        assert a.op("g", y) == brute.sufficiency(rel, xs, y)
    assert roundtrip_algebra(a).passed
    assert roundtrip_frame(f, Kind.SUFFICIENCY).passed


@settings(max_examples=60, deadline=None)
@given(relations)
def test_possibility_cm_matches_brute_force(nr):
    n, rel = nr
    xs = list(range(1, n + 1))
    a = cm(Frame.plain(xs, rel), Kind.POSSIBILITY)
    for y in brute.subsets(xs):
        assert a.op("f", y) == brute.possibility(rel, xs, y)


def posets(max_size):
    return st.integers(1, max_size).flatmap(
        lambda n: st.sets(st.tuples(st.integers(1, n), st.integers(1, n))).map(
            lambda r: Poset(range(1, n + 1), [(min(p), max(p)) for p in r], close=True)))


@settings(max_examples=40, deadline=None)
@given(posets(3))
def test_bdl_cm_is_the_up_set_lattice_and_prime_filters_match(p):
    a = cm(Frame.ordered(p), Kind.BDL)
    assert set(a.elements) == set(brute.up_sets(p.elements, p.leq))
    els = list(a.elements)
    le = {(x, y) for x in els for y in els if x <= y}
    assert sorted(map(sorted, prime_filters(a.lattice)), key=str) == sorted(map(sorted, brute.prime_filters(els, le)), key=str)


@settings(max_examples=60, deadline=None)
@given(posets(4))
def test_rdsa_pseudocomplements_agree_with_adjunction(p):
    strict = p.strict_pairs()
    if any(sum((x, y) in strict for y in p.elements) > 1 or sum((y, x) in strict for y in p.elements) > 1
           for x in p.elements):
        return
    a = cm(Frame.ordered(p), Kind.RDSA)
    els = list(a.elements)
    le = {(x, y) for x in els for y in els if x <= y}
    for y in els:
        assert a.op("star", y) == brute.pseudocomplement(els, le, y)
        assert a.op("plus", y) == brute.dual_pseudocomplement(els, le, y)
