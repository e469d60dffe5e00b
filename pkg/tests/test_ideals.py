"""Tests for the ideal catalog."""
import sys
from unittest.mock import patch

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ArgumentError
from src.ideals import (CATALOG, DensityZeroIdeal, EvenFinIdeal, FinIdeal, FinPerBlockIdeal, LocalBlocksIdeal,
                        MeetsFinBlocksIdeal, RestrictedIdeal, Verdict, catalog_ideals, get_ideal_class, restrict)
from src.setexpr import (EVENS, NAT, ODDS, POWERS_OF_TWO, SQUARES, Arith, Block, Counted, CountedTraits, Tail,
                         diff, finite, union)

IN, OUT, UNKNOWN = Verdict.IN, Verdict.OUT, Verdict.UNKNOWN

periodic_sets = st.one_of(
    st.builds(Arith, st.integers(min_value=0, max_value=11), st.integers(min_value=1, max_value=12)),
    st.builds(Block, st.integers(min_value=1, max_value=6)),
    st.builds(Tail, st.integers(min_value=1, max_value=40)),
    st.builds(finite, st.sets(st.integers(min_value=1, max_value=60), max_size=6)),
)


def opaque(name="opaque"):
    """A counted set with no certified traits."""
    return Counted(name, lambda N: iter(()))


def test_catalog_lookup():
    """Catalog names resolve to their classes."""
    assert set(CATALOG) == {"fin", "i1", "i2", "i3", "id", "local-blocks"}
    assert get_ideal_class("i1") is EvenFinIdeal
    assert get_ideal_class("nope") is None
    assert [str(ideal) for ideal in catalog_ideals()] == list(CATALOG)


@pytest.mark.parametrize("ideal", catalog_ideals(), ids=str)
def test_catalog_is_admissible(ideal):
    """Singletons are members and ℕ is not."""
    report = ideal.is_admissible(64)
    assert report.admissible
    assert report.failed_singletons == []
    assert report.contains_nat is OUT


def test_admissibility_window_checked():
    """A window below 1 is rejected."""
    with pytest.raises(ArgumentError):
        FinIdeal().is_admissible(0)


@pytest.mark.parametrize("ideal,a,expected", [
    (FinIdeal(), finite([1, 5]), IN),
    (FinIdeal(), NAT, OUT),
    (FinIdeal(), SQUARES, OUT),
    (FinIdeal(), opaque(), UNKNOWN),
    (EvenFinIdeal(), EVENS, IN),
    (EvenFinIdeal(), Arith(2, 4), IN),
    (EvenFinIdeal(), union(EVENS, finite([1, 3])), IN),
    (EvenFinIdeal(), diff(NAT, Arith(1, 4)), OUT),
    (EvenFinIdeal(), ODDS, OUT),
    (EvenFinIdeal(), SQUARES, UNKNOWN),
    (MeetsFinBlocksIdeal(), Block(3), IN),
    (MeetsFinBlocksIdeal(), union(Block(1), Block(4)), IN),
    (MeetsFinBlocksIdeal(), EVENS, OUT),
    (MeetsFinBlocksIdeal(), POWERS_OF_TWO, OUT),
    (FinPerBlockIdeal(), POWERS_OF_TWO, IN),
    (FinPerBlockIdeal(), Block(2), OUT),
    (FinPerBlockIdeal(), NAT, OUT),
    (LocalBlocksIdeal(), Block(2), IN),
    (LocalBlocksIdeal(), union(Block(1), Block(2)), IN),
    (LocalBlocksIdeal(), EVENS, OUT),
    (DensityZeroIdeal(), SQUARES, IN),
    (DensityZeroIdeal(), POWERS_OF_TWO, IN),
    (DensityZeroIdeal(), Arith(0, 3), OUT),
    (DensityZeroIdeal(), diff(NAT, SQUARES), OUT),
    (DensityZeroIdeal(), union(opaque(), Arith(0, 4)), OUT),
])
def test_membership(ideal, a, expected):
    """Catalog decisions on structured sets."""
    assert ideal.contains(a).verdict is expected


def test_certificates_name_the_reason():
    """Certificates mention the deciding fact."""
    assert "odd part" in EvenFinIdeal().contains(ODDS).certificate
    assert "block(2) is infinite" in FinPerBlockIdeal().contains(Block(2)).certificate
    assert "finite" in FinIdeal().contains(finite([2])).certificate


def test_density_never_proven_by_sampling():
    """Sampled density bounds leave the verdict open."""
    odd_squares = Counted("odd_squares", lambda N: ((2 * k + 1) ** 2 for k in range(N)))
    verdict = DensityZeroIdeal().contains(odd_squares)
    assert verdict.verdict is UNKNOWN
    assert "sampled density" in verdict.certificate


def test_i1_window_witness_is_not_a_proof():
    """Odd elements in a window do not certify an infinite odd part."""
    verdict = EvenFinIdeal().contains(SQUARES)
    assert verdict.verdict is UNKNOWN
    assert "[1, 9, 25]" in verdict.certificate


def test_restrict_inside_domain():
    """Sets provably inside the domain defer to the base ideal."""
    trace = restrict(FinIdeal(), EVENS)
    assert isinstance(trace, RestrictedIdeal)
    assert str(trace) == "restrict(fin,arith(0,2))"
    assert trace.contains(finite([2, 4])).verdict is IN
    assert trace.contains(Arith(0, 4)).verdict is OUT


def test_restrict_outside_domain():
    """Elements outside the domain rule a set out, finite or not."""
    trace = restrict(FinIdeal(), EVENS)
    assert trace.contains(finite([1])).verdict is OUT
    assert trace.contains(SQUARES).verdict is OUT


def test_restrict_window_is_not_a_proof():
    """An inclusion seen only on a window never yields membership."""
    even_squares = Counted("even_squares", lambda N: (4 * k * k for k in range(1, N + 1)),
                           traits=CountedTraits(unbounded=True))
    trace = restrict(EvenFinIdeal(), EVENS)
    verdict = trace.contains(even_squares)
    assert verdict.verdict is UNKNOWN
    assert "only checked up to" in verdict.certificate


def test_restrict_to_finite_domain_warns():
    """Restricting to a finite set is allowed but logged."""
    with patch.object(sys.modules["src.ideals.restrict"], "logger") as mock_logger:
        restrict(FinIdeal(), finite([1, 2]))
    mock_logger.warning.assert_called_once()


@settings(max_examples=80, deadline=None)
@given(periodic_sets)
def test_periodic_sets_are_always_decided(a):
    """Every catalog ideal decides eventually periodic sets."""
    for ideal in catalog_ideals():
        assert ideal.contains(a).verdict is not UNKNOWN


@settings(max_examples=80, deadline=None)
@given(periodic_sets)
def test_catalog_inclusions(a):
    """fin lies in every ideal; i2 and i3 lie in local-blocks."""
    verdicts = {str(ideal): ideal.contains(a).verdict for ideal in catalog_ideals()}
    if verdicts["fin"] is IN:
        assert all(v is IN for v in verdicts.values())
    if verdicts["i2"] is IN or verdicts["i3"] is IN:
        assert verdicts["local-blocks"] is IN
