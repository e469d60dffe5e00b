"""Tests for finite spaces and the exhaustive labs."""
from unittest.mock import patch

import pytest

from src.errors import ArgumentError, ConstructionError, PreconditionError, SizeError
from src.ideals import catalog_ideals
from src.setexpr import EVENS, NAT, ODDS, finite
from src.topolab import (FinMap, FinSeq, FinSpace, all_maps, check_preimages, classical_closure,
                         count_topologies_brute_force, enumerate_topologies, fiber_corpus, find_homeomorphism,
                         i_closed_sets, i_closure, is_hausdorff, is_i_closed_map, is_i_compact, is_i_continuous,
                         is_i_embedding, is_i_homeomorphism, is_i_open, is_i_proper, is_i_sequential, is_i_us,
                         is_locally_i_compact, is_t1, min_nbhd, run_lab, seq_limits)


def test_space_validation():
    """Opens must form a topology on distinct labels."""
    with pytest.raises(ConstructionError):
        FinSpace.from_opens(["a", "b"], [[], ["a"]])
    with pytest.raises(ConstructionError):
        FinSpace.from_opens(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])
    with pytest.raises(ConstructionError):
        FinSpace.from_opens(["a", "a"], [[], ["a"]])
    with pytest.raises(ConstructionError):
        FinSpace.from_opens(["a"], [[], ["a"], ["z"]])
    with pytest.raises(SizeError):
        FinSpace.discrete(list("abcdefg"))


def test_space_basics(sierpinski):
    """Open and closed sets of the Sierpiński space."""
    assert sierpinski.is_open({"a"})
    assert sierpinski.is_closed({"b"})
    assert not sierpinski.is_discrete()
    assert str(sierpinski) == "space{points: a,b; opens: {}, {a}, {a,b}}"
    assert sierpinski.subspace({"b"}).opens == frozenset({frozenset(), frozenset({"b"})})
    with pytest.raises(ArgumentError):
        sierpinski.subspace({"c"})


def test_minimal_neighbourhoods(sierpinski):
    """Minimal neighbourhoods and classical closure."""
    assert min_nbhd(sierpinski, "a") == frozenset({"a"})
    assert min_nbhd(sierpinski, "b") == frozenset({"a", "b"})
    assert classical_closure(sierpinski, {"a"}) == frozenset({"a", "b"})
    assert classical_closure(sierpinski, {"b"}) == frozenset({"b"})
    with pytest.raises(ArgumentError):
        min_nbhd(sierpinski, "z")


def test_separation(sierpinski, discrete2):
    """Finite T1 spaces are discrete and Hausdorff."""
    assert is_t1(discrete2) and is_hausdorff(discrete2)
    assert not is_t1(sierpinski) and not is_hausdorff(sierpinski)
    assert not is_hausdorff(FinSpace.indiscrete(["a", "b"]))


def test_fiber_corpus(sierpinski):
    """Constant sequences plus the alternating ones mod 2."""
    corpus = fiber_corpus(sierpinski)
    assert len(corpus) == 4
    assert len(fiber_corpus(sierpinski, values={"a"})) == 1
    assert len(fiber_corpus(sierpinski, modulus=1)) == 2
    with pytest.raises(ArgumentError):
        fiber_corpus(sierpinski, modulus=5)


def test_seq_limits(sierpinski, fin, i1):
    """The constant sequence a converges to both points; b only to b."""
    assert seq_limits(FinSeq(sierpinski, (("a", NAT),)), fin) == frozenset({"a", "b"})
    assert seq_limits(FinSeq(sierpinski, (("b", NAT),)), fin) == frozenset({"b"})
    mixed = FinSeq(sierpinski, (("a", ODDS), ("b", EVENS)))
    assert seq_limits(mixed, fin) == frozenset({"b"})
    assert seq_limits(mixed, i1) == frozenset({"a", "b"})


def test_seq_limits_need_nonthin_domain(sierpinski, fin):
    """Sequences on a finite domain have no limits to speak of."""
    thin = FinSeq(sierpinski, (("a", finite([1, 2])),), finite([1, 2]))
    with pytest.raises(PreconditionError):
        seq_limits(thin, fin)
    with pytest.raises(ArgumentError):
        FinSeq(sierpinski, (("z", NAT),))


def test_i_closure_matches_classical(sierpinski, fin, i1):
    """I-closure coincides with the classical closure."""
    for ideal in (fin, i1):
        assert i_closure(sierpinski, {"a"}, ideal) == frozenset({"a", "b"})
        assert i_closure(sierpinski, {"b"}, ideal) == frozenset({"b"})
        assert i_closure(sierpinski, set(), ideal) == frozenset()
    assert is_i_open(sierpinski, {"a"}, fin)
    assert not is_i_open(sierpinski, {"b"}, fin)
    assert sorted(map(sorted, i_closed_sets(sierpinski, fin))) == [[], ["a", "b"], ["b"]]
    with pytest.raises(ArgumentError):
        i_closure(sierpinski, {"z"}, fin)


@pytest.mark.parametrize("subset", [(), ("a",), ("b",), ("a", "b")])
def test_i_closure_stable_under_larger_corpus(subset, sierpinski, discrete2, fin, i1):
    """Residue maps up to modulus 4 add no limit points."""
    for space in (sierpinski, discrete2):
        for ideal in (fin, i1):
            assert i_closure(space, subset, ideal, modulus=4) == classical_closure(space, subset)


def test_space_properties(sierpinski, discrete2, fin):
    """Uniqueness of limits, sequentiality and compactness on small spaces."""
    assert is_i_us(discrete2, fin)
    assert not is_i_us(sierpinski, fin)
    assert is_i_sequential(sierpinski, fin)
    assert is_i_compact(sierpinski, fin).compact
    assert is_locally_i_compact(sierpinski, fin)


def test_maps(sierpinski):
    """Maps assign one image per point."""
    swap = FinMap.from_dict(sierpinski, sierpinski, {"a": "b", "b": "a"})
    assert swap("a") == "b"
    assert swap.preimage({"a"}) == frozenset({"b"})
    assert swap.is_bijective()
    assert not swap.is_continuous()
    assert swap.inverse()("b") == "a"
    with pytest.raises(ArgumentError):
        FinMap.from_dict(sierpinski, sierpinski, {"a": "a"})
    with pytest.raises(PreconditionError):
        FinMap.from_dict(sierpinski, sierpinski, {"a": "a", "b": "a"}).inverse()
    assert len(list(all_maps(sierpinski, sierpinski))) == 4


def test_i_continuity_matches_continuity(sierpinski, fin, i1):
    """Sequential and preimage I-continuity agree with classical continuity."""
    for ideal in (fin, i1):
        for f in all_maps(sierpinski, sierpinski):
            assert is_i_continuous(f, ideal) == f.is_continuous()


def test_homeomorphisms_and_embeddings(sierpinski, fin):
    """Identity is an I-homeomorphism; a point includes as an embedding."""
    identity = FinMap.from_dict(sierpinski, sierpinski, {"a": "a", "b": "b"})
    assert is_i_homeomorphism(identity, fin)
    assert is_i_closed_map(identity, fin)
    point = FinSpace.discrete(["a"])
    assert is_i_embedding(FinMap.from_dict(point, sierpinski, {"a": "a"}), fin)
    constant = FinMap.from_dict(sierpinski, point, {"a": "a", "b": "a"})
    assert not is_i_embedding(constant, fin)


def test_preimage_checks(sierpinski, fin):
    """Continuous maps between finite spaces pull back compact sets."""
    identity = FinMap.from_dict(sierpinski, sierpinski, {"a": "a", "b": "b"})
    report = check_preimages(identity, fin)
    assert report.compact_preimages and report.limit_preimages
    assert report.failures == []
    assert is_i_proper(identity, fin)
    swap = FinMap.from_dict(sierpinski, sierpinski, {"a": "b", "b": "a"})
    with pytest.raises(PreconditionError):
        check_preimages(swap, fin)


def test_find_homeomorphism(sierpinski):
    """Relabelling the Sierpiński space."""
    flipped = FinSpace.from_opens(["a", "b"], [[], ["b"], ["a", "b"]])
    assert find_homeomorphism(sierpinski, sierpinski) == {"a": "a", "b": "b"}
    assert find_homeomorphism(sierpinski, flipped) == {"a": "b", "b": "a"}
    assert find_homeomorphism(sierpinski, flipped, {"a": "a"}) is None
    assert find_homeomorphism(sierpinski, FinSpace.discrete(["a", "b"])) is None


@pytest.mark.parametrize("n,count", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_enumerate_topologies(n, count):
    """Labelled topology counts."""
    spaces = list(enumerate_topologies(n))
    assert len(spaces) == count
    assert len(set(spaces)) == count


def test_brute_force_count():
    """The brute-force filter agrees with the enumeration."""
    assert count_topologies_brute_force(2) == 4
    assert count_topologies_brute_force(3) == 29


def test_enumeration_limit():
    """Five points are out of range."""
    with pytest.raises(SizeError):
        list(enumerate_topologies(5))
    with pytest.raises(SizeError):
        count_topologies_brute_force(5)


@pytest.mark.parametrize("prop", ["closure-collapse", "compact", "us-t1", "sequential"])
def test_run_lab_space_properties(prop, fin, i1):
    """Each property holds on every space with at most 3 points."""
    for ideal in (fin, i1):
        report = run_lab(prop, 3, ideal)
        assert report.instances == 34
        assert report.failures == 0
        assert report.topologies == {"1": 1, "2": 4, "3": 29}


def test_run_lab_continuity(fin):
    """Every map between spaces with at most 2 points."""
    with patch("src.topolab.logger") as mock_logger:
        report = run_lab("continuity", 2, fin)
    assert report.instances == 77
    assert report.failures == 0
    mock_logger.info.assert_called_once()


def test_run_lab_arguments(fin):
    """Unknown properties and oversized continuity runs are rejected."""
    with pytest.raises(ArgumentError):
        run_lab("bogus", 2, fin)
    with pytest.raises(SizeError):
        run_lab("continuity", 4, fin)


@pytest.mark.parametrize("prop", ["closure-collapse", "us-t1"])
@pytest.mark.parametrize("ideal", catalog_ideals(), ids=str)
def test_run_lab_four_points_every_ideal(prop, ideal):
    """Closure collapse and I-US versus T1 on all 389 spaces with at most 4 points."""
    report = run_lab(prop, 4, ideal)
    assert report.instances == 389
    assert report.failures == 0
    assert report.topologies == {"1": 1, "2": 4, "3": 29, "4": 355}
