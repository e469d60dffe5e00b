"""Tests for sequences and ideal convergence."""
from fractions import Fraction

import pytest
import sympy

from src.errors import (ArgumentError, PreconditionError, PresentationError, UnsupportedPresentationError,
                        WitnessError)
from src.ideals import DensityZeroIdeal, EvenFinIdeal, FinIdeal
from src.seq import (Codomain, Outcome, Region, a_eps, block_coordinates, block_decrease_certificate,
                     closed_form, dyadic_analysis, dyadic_counterexample, fiber_map, i_cluster_points,
                     i_converges, i_eventually_constant, i_eventually_in, i_limits, increasing_extract,
                     is_nonthin, longest_increasing_length, near_set)
from src.setexpr import EVENS, NAT, ODDS, SQUARES, finite, members
from src.shrink import CWitness

GRID = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]


@pytest.mark.parametrize("n,expected", [(2, (0, 1)), (3, (1, 1)), (4, (1, 2)), (5, (2, 1)), (8, (2, 4)), (9, (3, 1))])
def test_block_coordinates(n, expected):
    """n = 2^k + r with 1 <= r <= 2^k."""
    assert block_coordinates(n) == expected


def test_closed_form_values():
    """Closed forms evaluate exactly."""
    seq = closed_form("1/n")
    assert seq.value(4) == sympy.Rational(1, 4)
    assert seq.codomain is Codomain.REAL
    assert str(seq) == "closed(1/n)"
    with pytest.raises(PresentationError):
        closed_form("1/m")


def test_closed_form_undefined_value():
    """Division by zero surfaces as a presentation error."""
    with pytest.raises(PresentationError):
        closed_form("1/(n-2)").value(2)


def test_closed_form_index_sets():
    """Index sets agree with direct evaluation whichever way they are produced."""
    seq = closed_form("1/n")
    assert members(a_eps(seq, 0, Fraction(1, 2)), 10) == [1, 2]
    assert members(near_set(seq, 0, Fraction(1, 2)), 6) == [3, 4, 5, 6]
    with pytest.raises(ArgumentError):
        a_eps(seq, 0, 0)


def test_fiber_map_codomains():
    """The codomain follows the kind of values."""
    assert fiber_map([(0, ODDS), (1, EVENS)]).codomain is Codomain.REAL
    assert fiber_map([((0, 1), ODDS), ((0, -1), EVENS)]).codomain is Codomain.PLANE
    assert fiber_map([("a", ODDS), ("b", EVENS)]).codomain is Codomain.FINITE_POINTS
    with pytest.raises(PresentationError):
        fiber_map([(0, ODDS), (0, EVENS)])


def test_fiber_values(alternating):
    """Fiber maps evaluate through their fibers."""
    assert [(n, int(v)) for n, v in alternating.values(4)] == [(1, 0), (2, 1), (3, 0), (4, 1)]
    assert alternating.value(7) == 0
    alternating.check_fibers(64)


def test_overlapping_fibers():
    """Fibers must be disjoint."""
    with pytest.raises(PresentationError):
        fiber_map([(0, NAT), (1, EVENS)]).check_fibers(16)


def test_nonthin(alternating, fin):
    """A sequence on ℕ is nonthin; one on a finite domain is not."""
    assert is_nonthin(alternating, fin) is True
    assert is_nonthin(fiber_map([(0, ODDS)], domain=ODDS), fin) is True
    assert is_nonthin(fiber_map([(0, finite([1, 2]))]), fin) is False


def test_eventually_constant(alternating, fin, i1):
    """Under i1 the even fiber is negligible; under fin nothing is."""
    assert i_eventually_constant(alternating, i1) == 0
    assert i_eventually_constant(alternating, fin) is None
    with pytest.raises(UnsupportedPresentationError):
        i_eventually_constant(closed_form("1/n"), fin)


def test_convergence(alternating, fin, i1):
    """The alternating sequence i1-converges to 0 and fin-diverges."""
    verdict = i_converges(alternating, 0, i1, GRID)
    assert verdict.verdict is Outcome.CONVERGES
    assert [check.index_set for check in verdict.per_epsilon] == ["arith(0,2)"] * 3
    assert i_converges(alternating, 0, fin, GRID).verdict is Outcome.DIVERGES
    assert i_converges(alternating, 1, i1, GRID).verdict is Outcome.DIVERGES


def test_grid_checked(alternating, fin):
    """The epsilon grid must be non-empty and strictly decreasing."""
    with pytest.raises(ArgumentError):
        i_converges(alternating, 0, fin, [])
    with pytest.raises(ArgumentError):
        i_converges(alternating, 0, fin, [Fraction(1, 4), Fraction(1, 2)])


def test_cluster_points_and_limits(alternating, fin, i1):
    """fin sees both values as cluster points; i1 keeps only 0."""
    assert i_cluster_points(alternating, fin, [0, 1], GRID) == [0, 1]
    assert i_cluster_points(alternating, i1, [0, 1], GRID) == [0]
    assert i_limits(alternating, i1, [0, 1], GRID) == [0]
    assert i_limits(alternating, fin, [0, 1], GRID) == []
    with pytest.raises(ArgumentError):
        i_cluster_points(alternating, fin, [], GRID)


def test_eventually_in(alternating, fin, i1):
    """Eventually in {0} under i1 but not under fin."""
    region = Region(points=[0])
    assert i_eventually_in(alternating, region, i1).value is True
    assert i_eventually_in(alternating, region, fin).value is False
    assert i_eventually_in(alternating, Region(points=[0, 1]), fin).value is True
    with pytest.raises(ArgumentError):
        Region()


def test_longest_increasing_length():
    """Strictly increasing subsequences."""
    assert longest_increasing_length([3, 1, 2, 5, 4]) == 3
    assert longest_increasing_length([5, 4, 3]) == 1
    assert longest_increasing_length([]) == 0


def test_dyadic_counterexample_values():
    """Each block 2^k < n <= 2^(k+1) runs down from 2^(k+1) to 2^k + 1."""
    seq = dyadic_counterexample()
    assert [int(v) for _, v in seq.values(8)] == [2, 1, 4, 3, 8, 7, 6, 5]
    assert block_decrease_certificate(seq, 6).holds


def test_dyadic_analysis():
    """Increasing runs stay logarithmic in the prefix length."""
    _, analysis = dyadic_analysis(10)
    assert analysis.n_max == 2048
    assert analysis.block_2_values == [8, 7, 6, 5]
    assert analysis.per_block_decreasing
    assert analysis.longest_increasing <= analysis.length_bound == 12
    assert analysis.holds
    with pytest.raises(ArgumentError):
        dyadic_analysis(2)


def test_block_certificate_needs_block_formula(alternating):
    """Only block formulas carry the per-block certificate."""
    with pytest.raises(UnsupportedPresentationError):
        block_decrease_certificate(alternating, 3)


def test_increasing_extract_on_dyadic():
    """The greedy walk through ℕ picks 1, 3, 5, 9, 17, ... and its range has density zero."""
    ideal = DensityZeroIdeal()
    result = increasing_extract(dyadic_counterexample(), ideal, CWitness(ideal, NAT, NAT), 1024)
    assert result.indices[:5] == [2, 4, 8, 16, 32]
    assert result.values[:5] == [1, 3, 5, 9, 17]
    assert result.values == sorted(result.values)
    assert 2 in result.skipped
    assert result.membership.verdict.value == "in"
    assert result.extrapolated is False


def test_increasing_extract_needs_witness_in_range():
    """Every element of B up to the window must be a value of the sequence."""
    fin = FinIdeal()
    with pytest.raises(WitnessError):
        increasing_extract(closed_form("2*n"), fin, CWitness(fin, ODDS, ODDS), 256)


def test_increasing_extract_rejects_range_in_ideal():
    """A fiber map with finitely many values has its range in fin."""
    fin = FinIdeal()
    seq = fiber_map([(1, ODDS), (2, EVENS)])
    with pytest.raises(PreconditionError):
        increasing_extract(seq, fin, CWitness(fin, NAT, NAT), 256)


def test_increasing_extract_identity():
    """The identity picks every natural number and its range is ℕ, which is not in fin."""
    fin = FinIdeal()
    result = increasing_extract(closed_form("n"), fin, CWitness(fin, NAT, NAT), 256)
    assert result.indices == list(range(1, 257))
    assert result.values == result.indices
    assert result.skipped == []
    assert result.range_set == str(NAT)
    assert result.membership.verdict.value == "out"
    assert result.extrapolated is True


def test_increasing_extract_checks_witness():
    """The witness must sit inside A and outside the ideal."""
    ideal = DensityZeroIdeal()
    seq = dyadic_counterexample()
    with pytest.raises(WitnessError):
        increasing_extract(seq, ideal, CWitness(ideal, NAT, SQUARES))
    with pytest.raises(WitnessError):
        increasing_extract(seq, ideal, CWitness(ideal, EVENS, NAT))


def test_increasing_extract_needs_natural_values(alternating):
    """Values must be natural numbers."""
    fin = FinIdeal()
    with pytest.raises(PresentationError):
        increasing_extract(alternating, fin, CWitness(fin, NAT, NAT), 64)


@pytest.mark.parametrize("expr,xi", [("1/n", 0), ("1 + 1/n", 1), ("2 - 1/n", 2), ("n", 0), ("1 + 1/n", 0)])
def test_fin_convergence_is_classical(expr, xi, fin):
    """Under fin the verdict matches the ordinary limit of the closed form."""
    seq = closed_form(expr)
    (n,) = seq.body.expr.free_symbols
    classical = sympy.limit(seq.body.expr, n, sympy.oo) == xi
    verdict = i_converges(seq, xi, fin, GRID).verdict
    assert verdict is (Outcome.CONVERGES if classical else Outcome.DIVERGES)


@pytest.mark.parametrize("expr,xi", [("1/n", 0), ("1 + 1/n", 1), ("2 - 1/n", 2)])
def test_convergence_passes_to_larger_ideals(expr, xi, fin):
    """fin ⊆ i1 and fin ⊆ id, so fin-limits are limits under both."""
    seq = closed_form(expr)
    assert i_converges(seq, xi, fin, GRID).verdict is Outcome.CONVERGES
    for ideal in (EvenFinIdeal(), DensityZeroIdeal()):
        assert i_converges(seq, xi, ideal, GRID).verdict is Outcome.CONVERGES


def test_limits_are_unique(fin, i1):
    """A nonthin sequence has at most one limit among the candidates."""
    seq = closed_form("1/n")
    for ideal in (fin, i1, DensityZeroIdeal()):
        assert i_limits(seq, ideal, [0, Fraction(1, 2), 1], GRID) == [0]
