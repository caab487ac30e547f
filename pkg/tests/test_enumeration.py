import pytest

import brute
from dualitykit import Frame, Kind
from dualitykit.duality import frame_report
from dualitykit.enumeration import (
    CEILING_ENV,
    CeilingError,
    ceiling,
    de_morgan_frames,
    diversity_characterization,
    enumerate_frames,
    enumerate_partitions,
    enumerate_posets,
    partitions_oracle,
    posets_oracle,
    r2a_frames,
    rdsa_frames,
    restricted_growth,
    theorem_ids,
    verify_theorem,
)
from dualitykit.errors import DomainError
from dualitykit.rra import check_r2fa


def count(it):
    return sum(1 for _ in it)


@pytest.mark.parametrize("n", range(0, 6))
def test_partition_counts_match_pure_python_oracle(n):
    assert count(enumerate_partitions(n)) == count(brute.set_partitions(range(n)))


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 5), (4, 15)])
def test_partition_counts_match_relation_filter_oracle(n, expected):
    assert count(enumerate_partitions(n)) == partitions_oracle(n) == expected


@pytest.mark.parametrize("n", range(0, 4))
def test_poset_counts_match_pure_python_oracle(n):
    assert count(enumerate_posets(n)) == brute.count_labeled_posets(n)


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 3), (3, 19), (4, 219)])
def test_poset_counts_match_relation_filter_oracle(n, expected):
    assert count(enumerate_posets(n)) == posets_oracle(n) == expected


def test_unlabeled_posets_up_to_isomorphism():
    assert [count(enumerate_posets(n, labeled=False)) for n in range(1, 5)] == [1, 2, 5, 16]


def test_streams_have_no_duplicates():
    for n in range(1, 5):
        spaces = list(enumerate_partitions(n))
        assert len(set(spaces)) == len(spaces)
        posets = list(enumerate_posets(n))
        assert len(set(posets)) == len(posets)


def test_restricted_growth_order_is_lexicographic():
    strings = list(restricted_growth(3))
    assert strings == sorted(strings) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]


def test_diversity_frames_are_complements_of_partitions():
    frames = list(enumerate_frames(Kind.DIVERSITY, 2))
    assert len(frames) == 2
    assert {f.rel for f in frames} == {frozenset(), frozenset({(1, 2), (2, 1)})}


def test_rdsa_frames_small_sizes():
    assert count(rdsa_frames(2)) == 3
    shapes = {f.order.strict_pairs() for f in rdsa_frames(3)}
    assert frozenset({(1, 2), (2, 3), (1, 3)}) not in shapes
    assert all(frame_report(f, Kind.RDSA).passed for f in rdsa_frames(4))


def test_rdsa_frames_are_exactly_the_posets_passing_the_shape_law():
    for n in range(1, 5):
        passing = [p for p in enumerate_posets(n) if frame_report(Frame.ordered(p), Kind.RDSA).passed]
        assert count(rdsa_frames(n)) == len(passing)


def test_de_morgan_frame_counts():
    assert [count(de_morgan_frames(n)) for n in (1, 2, 3)] == [1, 4, 16]
    assert all(frame_report(f, Kind.DEMORGAN).passed for f in de_morgan_frames(3))


def test_rough_relation_frames_pass_their_axioms():
    frames = list(r2a_frames(1)) + list(r2a_frames(2))
    assert len(frames) == 8
    assert all(check_r2fa(f).passed for f in frames)


def test_diversity_characterization_small():
    checked, mismatches, first = diversity_characterization(3)
    assert (checked, mismatches, first) == (512, 0, None)


def test_ceiling_guard_and_environment_override(monkeypatch):
    assert ceiling("posets") == 4
    with pytest.raises(CeilingError):
        list(enumerate_posets(5))
    monkeypatch.setenv(CEILING_ENV, "5")
    assert ceiling("posets") == 5
    assert count(enumerate_posets(5, labeled=False)) == 63
    monkeypatch.setenv(CEILING_ENV, "2")
    with pytest.raises(CeilingError):
        list(enumerate_partitions(3))
    monkeypatch.setenv(CEILING_ENV, "lots")
    with pytest.raises(DomainError):
        ceiling()


# -- verification -----------------------------------------------------------------------

def test_equivalence_lemma_up_to_three():
    s = verify_theorem("lem:equiv", 3)
    assert s.instances == 8 and s.failed == 0
    assert dict(s.sizes) == {1: 1, 2: 2, 3: 5}


def test_distributive_lattices_on_one_point():
    s = verify_theorem("DDLat", 1)
    assert s.instances == 1 and s.passed


def test_rough_set_algebras_up_to_four():
    s = verify_theorem("rhm:rsdaalg", 4)
    assert s.instances == 23 and s.checked == 23 and s.failed == 0


def test_unknown_theorem_is_a_domain_error():
    with pytest.raises(DomainError, match="unknown theorem"):
        verify_theorem("no-such-theorem", 2)


def test_every_theorem_id_resolves():
    for tid in theorem_ids():
        assert verify_theorem(tid, 1).failed == 0


def test_summaries_do_not_depend_on_worker_count():
    one = verify_theorem("DeM", 3)
    two = verify_theorem("DeM", 3, workers=2)
    assert one == two
    assert one.render() == two.render()


def test_sampling_is_seeded():
    a = verify_theorem("repsuff1", 2, sample_n=4, samples=5, seed=7)
    b = verify_theorem("repsuff1", 2, sample_n=4, samples=5, seed=7)
    assert a == b and dict(a.sizes)[4] == 5
