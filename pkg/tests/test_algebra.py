import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import brute
from dualitykit import FiniteAlgebra, Kind, Poset, check_embedding, check_kind, powerset_algebra
from dualitykit.algebra import (
    derive_join_meet,
    dual_operator,
    powerset_lattice,
    prime_filters,
    pseudocomplements,
    star_operator,
    star_transfer,
    ultrafilters,
    up_set_lattice,
)
from dualitykit.approx import BinaryRelation, possibility_op, sufficiency_op
from dualitykit.errors import DomainError, PreconditionError

E, ONE, TWO, BOTH = frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 2})
SUBSETS12 = [E, ONE, TWO, BOTH]


def chain(labels):
    return derive_join_meet(Poset.chain(labels))


def diamond():
    return derive_join_meet(Poset("0ab1", [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], close=True))


# -- lattices --------------------------------------------------------------------

def test_two_chain_is_a_two_element_lattice():
    lat = chain("01")
    assert len(lat) == 2 and lat.elements[lat.bottom] == "0" and lat.elements[lat.top] == "1"


def test_diamond_bounds():
    lat = diamond()
    i = lat.index
    assert lat.elements[lat.join[i["a"], i["b"]]] == "1"
    assert lat.elements[lat.meet[i["a"], i["b"]]] == "0"
    assert lat.is_boolean


def test_antichain_is_not_a_lattice():
    with pytest.raises(PreconditionError, match="not a lattice") as err:
        derive_join_meet(Poset.antichain("ab"))
    assert err.value.witness == ("a", "b")


def test_join_meet_tables_match_brute_force_on_up_set_lattices():
    p = Poset("abc", [("a", "b")], close=True)
    lat = up_set_lattice(p)
    lub, glb = brute.join_meet(list(lat.elements), {(x, y) for x in lat.elements for y in lat.elements if x <= y})
    for i, x in enumerate(lat.elements):
        for j, y in enumerate(lat.elements):
            assert lat.elements[lat.join[i, j]] == lub(x, y)
            assert lat.elements[lat.meet[i, j]] == glb(x, y)


# -- filters -------------------------------------------------------------------------

def test_prime_filters_of_small_lattices():
    assert prime_filters(chain("01")) == [{"1"}]
    assert sorted(map(sorted, prime_filters(chain("0a1")))) == [["1"], ["1", "a"]]
    assert len(prime_filters(powerset_lattice("xy"))) == 2


def test_prime_filters_need_distributivity():
    m3 = derive_join_meet(Poset("0abc1", [("0", x) for x in "abc"] + [(x, "1") for x in "abc"], close=True))
    with pytest.raises(PreconditionError, match="distributive"):
        prime_filters(m3)


@pytest.mark.parametrize("pairs", [[], [("a", "b")], [("a", "b"), ("a", "c")], [("a", "c"), ("b", "c")]])
def test_prime_filters_match_brute_force(pairs):
    lat = up_set_lattice(Poset("abc", pairs, close=True))
    els = list(lat.elements)
    le = {(x, y) for x in els for y in els if x <= y}
    assert sorted(map(sorted, prime_filters(lat)), key=str) == sorted(map(sorted, brute.prime_filters(els, le)), key=str)


def test_ultrafilter_counts():
    assert len(ultrafilters(powerset_lattice([1, 2, 3]))) == 3
    assert len(ultrafilters(powerset_lattice([1]))) == 1
    assert len(ultrafilters(powerset_lattice([1, 2]))) == 2


def test_ultrafilters_need_a_boolean_lattice():
    with pytest.raises(PreconditionError):
        ultrafilters(chain("0a1"))


# -- derived operators -----------------------------------------------------------------

def total_possibility():
    rel = BinaryRelation([1, 2], [(x, y) for x in (1, 2) for y in (1, 2)])
    return powerset_algebra([1, 2], Kind.MONADIC, {"f": {y: possibility_op(rel, y) for y in SUBSETS12}})


def as_values(b, table):
    return {x: b.elements[table[i]] for i, x in enumerate(b.elements)}


def test_dual_of_identity_is_identity():
    b = powerset_algebra([1, 2], Kind.POSSIBILITY, {"f": {y: y for y in SUBSETS12}})
    assert as_values(b, dual_operator(b, "f")) == {y: y for y in SUBSETS12}


def test_dual_of_total_possibility():
    b = total_possibility()
    assert as_values(b, dual_operator(b, "f"))[ONE] == E


def test_dual_of_constant_top():
    b = powerset_algebra([1, 2], Kind.POSSIBILITY, {"f": {y: BOTH if y else E for y in SUBSETS12}})
    dual = as_values(b, dual_operator(b, "f"))
    assert dual[BOTH] == BOTH and all(dual[y] == E for y in (E, ONE, TWO))


def test_dual_needs_complements():
    a = FiniteAlgebra(chain("0a1"), Kind.RDSA, {"star": {"0": "1", "a": "0", "1": "0"},
                                                 "plus": {"0": "1", "a": "1", "1": "0"}})
    with pytest.raises(PreconditionError):
        dual_operator(a, "star")


def sufficiency_algebra(pairs):
    rel = BinaryRelation([1, 2], pairs)
    return powerset_algebra([1, 2], Kind.SUFFICIENCY, {"g": {y: sufficiency_op(rel, y) for y in SUBSETS12}})


def test_constant_top_sufficiency_comes_from_total_relation():
    b = sufficiency_algebra([(x, y) for x in (1, 2) for y in (1, 2)])
    assert set(b.table("g").values()) == {BOTH}
    assert set(as_values(b, star_operator(b, "g")).values()) == {E}


def test_empty_relation_sufficiency_only_covers_empty_set():
    b = sufficiency_algebra([])
    assert b.table("g") == {E: BOTH, ONE: E, TWO: E, BOTH: E}


def test_star_keeps_normality():
    b = sufficiency_algebra([(1, 1)])
    assert as_values(b, star_operator(b, "g"))[E] == E


@pytest.mark.parametrize("pairs", [[], [(1, 2)], [(1, 1), (2, 1)], [(x, y) for x in (1, 2) for y in (1, 2)]])
def test_star_of_sufficiency_is_possibility_of_complement(pairs):
    b = sufficiency_algebra(pairs)
    star = as_values(b, star_operator(b, "g"))
    rest = BinaryRelation([1, 2], pairs).complement()
    assert all(star[y] == possibility_op(rest, y) for y in SUBSETS12)


# -- law checking ------------------------------------------------------------------------

def test_total_possibility_is_monadic():
    assert check_kind(total_possibility()).passed


def test_three_chain_rdsa_passes():
    a = FiniteAlgebra(chain("0a1"), Kind.RDSA, {"star": {"0": "1", "a": "0", "1": "0"},
                                                 "plus": {"0": "1", "a": "1", "1": "0"}})
    assert check_kind(a).passed


def test_four_chain_fails_regularity_at_a_b():
    lat = chain("0ab1")
    star, plus = pseudocomplements(lat)
    by_name = lambda t: {x: lat.elements[t[i]] for i, x in enumerate(lat.elements)}
    assert by_name(star) == {"0": "1", "a": "0", "b": "0", "1": "0"}
    assert by_name(plus) == {"0": "1", "a": "1", "b": "1", "1": "0"}
    rep = check_kind(FiniteAlgebra(lat, Kind.RDSA, {"star": star, "plus": plus}))
    assert rep.failed_laws() == ["rdsa.M"]
    assert rep.law("rdsa.M").witness == (("a", "a"), ("b", "b"))


def test_signature_mismatch_is_a_domain_error():
    with pytest.raises(DomainError, match="signature"):
        powerset_algebra([1], Kind.MONADIC, {"g": {E: E, ONE: ONE}})
    with pytest.raises(DomainError):
        check_kind(total_possibility(), Kind.DEMORGAN)


def test_identity_operator_is_monadic_without_alarms():
    b = powerset_algebra([1, 2], Kind.MONADIC, {"f": {y: y for y in SUBSETS12}})
    rep = check_kind(b)
    assert rep.passed and not rep.alarms


def test_identity_embedding_is_iso():
    b = total_possibility()
    rep = check_embedding({x: x for x in b.elements}, b, b)
    assert rep.passed and rep.get_info("surjective") == "yes"


def test_constant_map_fails_injectivity():
    b = powerset_algebra([1], Kind.MONADIC, {"f": {E: E, ONE: ONE}})
    rep = check_embedding({E: E, ONE: E}, b, b)
    assert rep.violations[0][0] == "embedding.injective"


def test_non_total_embedding_is_a_domain_error():
    b = total_possibility()
    with pytest.raises(DomainError, match="not total"):
        check_embedding({E: E}, b, b)


# -- properties --------------------------------------------------------------------------------

tables = st.lists(st.integers(0, 3), min_size=4, max_size=4)


def brute_possibility_laws(t):
    els = SUBSETS12
    f = {els[i]: els[v] for i, v in enumerate(t)}
    return f[E] == E and all(f[x | y] == f[x] | f[y] for x in els for y in els)


def brute_sufficiency_laws(t):
    els = SUBSETS12
    g = {els[i]: els[v] for i, v in enumerate(t)}
    return g[E] == BOTH and all(g[x | y] == g[x] & g[y] for x in els for y in els)


@settings(max_examples=256)
@given(tables)
def test_possibility_laws_match_brute_force(t):
    lat = powerset_lattice([1, 2])
    order = [lat.index[y] for y in SUBSETS12]
    table = np.empty(4, dtype=np.int64)
    table[order] = [order[v] for v in t]
    assert check_kind(FiniteAlgebra(lat, Kind.POSSIBILITY, {"f": table})).passed == brute_possibility_laws(t)


@settings(max_examples=256)
@given(tables)
def test_sufficiency_iff_star_is_possibility(t):
    lat = powerset_lattice([1, 2])
    order = [lat.index[y] for y in SUBSETS12]
    table = np.empty(4, dtype=np.int64)
    table[order] = [order[v] for v in t]
    suff, poss = star_transfer(lat, table)
    assert suff.passed == poss.passed == brute_sufficiency_laws(t)
