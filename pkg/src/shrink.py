"""Witnesses for the shrinking conditions (B) and (C) on catalog ideals.

(C) for A outside I: some B ⊆ A outside I none of whose infinite subsets is in I.
(B) for A1, A2, ... outside I: picks Bi ⊆ Ai in I whose union is outside I.

Witnesses are constructed per ideal and checked against a finite corpus of
structured subsets; nothing here is a proof for all subsets.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import ArgumentError, PreconditionError, StrategyFailure, WitnessError
from .ideals import (EvenFinIdeal, FinIdeal, FinPerBlockIdeal, Ideal, MeetsFinBlocksIdeal,
                     MembershipVerdict, Verdict)
from .report import Record
from .setexpr import (NAT, ODDS, SQUARES, Arith, Block, Counted, CountedTraits, Finite, Finiteness,
                      SetExpr, Tail, block_profile, classify_finiteness, compl, diff, every_other, finite,
                      inter, members, provably_subset, square_subsample, union)

logger = logging.getLogger(__name__)

MAX_BLOCK_SEARCH = 16
SEARCH_LIMIT = 1 << 16


class Strategy(str, Enum):
    ODD_PART = "odd-part"
    ONE_PER_BLOCK = "one-per-block"
    WITHIN_BLOCK = "within-block"
    CUSTOM = "custom"


class CWitnessRecord(Record):
    ideal: str
    a: str
    b: str
    strategy: Strategy
    prefix: List[int]


@dataclass(frozen=True)
class CWitness:
    ideal: Ideal
    a: SetExpr
    b: SetExpr
    strategy: Strategy = Strategy.CUSTOM

    def record(self, window: int = 64) -> CWitnessRecord:
        return CWitnessRecord(ideal=str(self.ideal), a=str(self.a), b=str(self.b),
                              strategy=self.strategy, prefix=members(self.b, window)[:12])


class BWitnessRecord(Record):
    ideal: str
    family: List[str]
    picks: List[List[int]]
    union: str
    union_membership: MembershipVerdict


@dataclass(frozen=True)
class BWitness:
    ideal: Ideal
    family: Tuple[SetExpr, ...]
    picks: Tuple[Finite, ...]
    union_b: SetExpr

    def record(self) -> BWitnessRecord:
        return BWitnessRecord(ideal=str(self.ideal), family=[str(a) for a in self.family],
                              picks=[list(b.elements) for b in self.picks], union=str(self.union_b),
                              union_membership=self.ideal.contains(self.union_b))


class SubsetCheck(Record):
    label: str
    subset: str
    verdict: Optional[Verdict]
    skipped: bool = False


class VerifyReport(Record):
    consistent: bool
    counterexample: Optional[str] = None
    reason: str
    checked: List[SubsetCheck]


# Condition (C)

def _one_per_block(a: SetExpr) -> Counted:
    def generate(N: int):
        picks = []
        for i in range(1, N.bit_length() + 1):
            trace = members(inter(a, Block(i)), N)
            if trace:
                picks.append(trace[0])
        return sorted(picks)

    traits = CountedTraits(unbounded=True, finite_traces=True, many_blocks=True, within=a)
    return Counted(f"one_per_block({a})", generate, traits=traits)


def _infinite_block(a: SetExpr) -> Optional[int]:
    profile = block_profile(a)
    if profile.infinite_blocks:
        return profile.infinite_blocks[0]
    for j in range(1, MAX_BLOCK_SEARCH + 1):
        if classify_finiteness(inter(a, Block(j))) is Finiteness.INFINITE:
            return j
    return None


def condc_witness(ideal: Ideal, a: SetExpr) -> CWitness:
    if ideal.contains(a).verdict is not Verdict.OUT:
        raise PreconditionError(f"{a} is not certified outside {ideal}")
    if isinstance(ideal, EvenFinIdeal):
        b = inter(a, ODDS)
        if classify_finiteness(b) is not Finiteness.INFINITE:
            raise StrategyFailure(f"odd part of {a} is not certified infinite")
        witness = CWitness(ideal, a, b, Strategy.ODD_PART)
    elif isinstance(ideal, MeetsFinBlocksIdeal):
        witness = CWitness(ideal, a, _one_per_block(a), Strategy.ONE_PER_BLOCK)
    elif isinstance(ideal, FinPerBlockIdeal):
        j = _infinite_block(a)
        if j is None:
            raise StrategyFailure(f"no block with a certified infinite trace of {a}")
        witness = CWitness(ideal, a, inter(a, Block(j)), Strategy.WITHIN_BLOCK)
    else:
        raise StrategyFailure(f"no condition (C) strategy for {ideal}")
    if not provably_subset(witness.b, a) or ideal.contains(witness.b).verdict is not Verdict.OUT:
        raise StrategyFailure(f"constructed set {witness.b} does not certify condition (C)")
    logger.info("condition (C) witness for %s in %s: %s", a, ideal, witness.b)
    return witness


def default_subset_corpus(b: SetExpr) -> List[Tuple[str, SetExpr]]:
    corpus = [("B", b)]
    for m in range(2, 9):
        corpus.extend((f"B∩arith({r},{m})", inter(b, Arith(r, m))) for r in range(m))
    corpus.extend((f"B∩block({i})", inter(b, Block(i))) for i in range(1, 9))
    corpus.append(("every_other(B)", every_other(b)))
    corpus.append(("square_subsample(B)", square_subsample(b)))
    return corpus


def condc_verify(witness: CWitness, window: int = 4096,
                 corpus: Optional[Callable[[SetExpr], Iterable[Tuple[str, SetExpr]]]] = None) -> VerifyReport:
    if window < 1:
        raise ArgumentError(f"window {window} must be >= 1")
    ideal, b = witness.ideal, witness.b
    stray = sorted(set(members(b, window)) - set(members(witness.a, window)))
    if stray:
        return VerifyReport(consistent=False, counterexample=str(finite(stray[:5])),
                            reason=f"B is not contained in A: {stray[:5]}", checked=[])
    verdict = ideal.contains(b).verdict
    if verdict is not Verdict.OUT:
        return VerifyReport(consistent=False, counterexample=str(b),
                            reason=f"B is not certified outside {ideal}", checked=[])
    checked: List[SubsetCheck] = []
    for label, s in (corpus or default_subset_corpus)(b):
        if classify_finiteness(s) is Finiteness.FINITE:
            checked.append(SubsetCheck(label=label, subset=str(s), verdict=None, skipped=True))
            continue
        v = ideal.contains(s).verdict
        checked.append(SubsetCheck(label=label, subset=str(s), verdict=v))
        if v is Verdict.IN:
            return VerifyReport(consistent=False, counterexample=str(s),
                                reason=f"infinite subset {label} belongs to {ideal}", checked=checked)
    return VerifyReport(consistent=True, reason=f"{len(checked)} subsets checked", checked=checked)


# Condition (B)

def _fresh(a: SetExpr, how_many: int, used: set) -> List[int]:
    N = 64
    while True:
        found = [n for n in members(a, N) if n not in used][:how_many]
        if len(found) == how_many:
            return found
        if N >= SEARCH_LIMIT:
            raise StrategyFailure(f"{a} has fewer than {how_many} fresh elements below {SEARCH_LIMIT}")
        N *= 2


def _union_of_picks(name: str, picks: Sequence[Finite], traits: CountedTraits) -> Counted:
    points = tuple(sorted(x for b in picks for x in b.elements))
    return Counted(name, lambda N: (x for x in points if x <= N), traits=traits)


def condb_witness(ideal: Ideal, family: Sequence[SetExpr]) -> BWitness:
    """First k stages of the uniform (B) construction for the given family."""
    if not family:
        raise ArgumentError("family must contain at least one set")
    for a in family:
        if ideal.contains(a).verdict is not Verdict.OUT:
            raise PreconditionError(f"{a} is not certified outside {ideal}")
    used: set = set()
    picks: List[Finite] = []
    if isinstance(ideal, EvenFinIdeal):
        for i, a in enumerate(family, start=1):
            chosen = _fresh(inter(a, ODDS), i, used)
            used.update(chosen)
            picks.append(finite(chosen))
        traits = CountedTraits(unbounded=True, within=ODDS)
    elif isinstance(ideal, FinIdeal):
        for a in family:
            chosen = _fresh(a, 1, used)
            used.update(chosen)
            picks.append(finite(chosen))
        traits = CountedTraits(unbounded=True)
    elif isinstance(ideal, MeetsFinBlocksIdeal):
        blocks_used: set = set()
        for i, a in enumerate(family, start=1):
            chosen = []
            for j in range(1, SEARCH_LIMIT.bit_length()):
                if len(chosen) == i:
                    break
                if j in blocks_used:
                    continue
                trace = members(inter(a, Block(j)), SEARCH_LIMIT)
                if trace:
                    chosen.append(trace[0])
                    blocks_used.add(j)
            if len(chosen) < i:
                raise StrategyFailure(f"{a} meets too few fresh blocks below {SEARCH_LIMIT}")
            picks.append(finite(chosen))
        traits = CountedTraits(unbounded=True, finite_traces=True, many_blocks=True)
    elif isinstance(ideal, FinPerBlockIdeal):
        shared = set.intersection(*(set(block_profile(a).infinite_blocks) for a in family))
        if not shared:
            shared = {j for j in range(1, MAX_BLOCK_SEARCH + 1)
                      if all(classify_finiteness(inter(a, Block(j))) is Finiteness.INFINITE for a in family)}
        if not shared:
            raise StrategyFailure("no block carries an infinite trace of every set in the family")
        j = min(shared)
        for i, a in enumerate(family, start=1):
            chosen = _fresh(inter(a, Block(j)), i, used)
            used.update(chosen)
            picks.append(finite(chosen))
        traits = CountedTraits(unbounded=True, within=Block(j))
    else:
        raise StrategyFailure(f"no condition (B) strategy for {ideal}")
    witness = BWitness(ideal, tuple(family), tuple(picks), _union_of_picks("union of picks", picks, traits))
    validate_b_witness(witness)
    return witness


def validate_b_witness(witness: BWitness) -> None:
    for a, b in zip(witness.family, witness.picks):
        if not provably_subset(b, a):
            raise WitnessError(f"{b} is not a subset of {a}")
        if witness.ideal.contains(b).verdict is not Verdict.IN:
            raise WitnessError(f"{b} is not in {witness.ideal}")
    if witness.ideal.contains(witness.union_b).verdict is not Verdict.OUT:
        raise WitnessError(f"union of the picks is not certified outside {witness.ideal}")


# Structured sets used by the catalog checks

EXAMPLE_CORPORA = {
    "i1": (NAT, ODDS, Arith(1, 4), Arith(3, 4), Block(1), union(Arith(0, 2), Arith(1, 6)), Tail(10),
           Arith(1, 3), diff(NAT, Arith(0, 4)), Arith(5, 10), compl(Arith(0, 8))),
    "i2": (NAT, Arith(0, 2), Arith(0, 4), Arith(0, 3), Tail(50), Arith(1, 3),
           union(Block(1), Arith(0, 8)), compl(Block(1)), Arith(0, 6), Arith(4, 12), Arith(3, 5)),
    "i3": (NAT, Block(1), Block(2), Block(3), Arith(0, 2), Arith(1, 4), Arith(2, 8), Tail(7),
           Arith(0, 3), union(Block(4), Arith(1, 6)), Arith(6, 12)),
}

DENSITY_CANDIDATES = (
    NAT, Arith(0, 2), Arith(1, 2), Arith(1, 3), Block(1), Block(2), Tail(100),
    union(Arith(0, 3), Arith(1, 5)), diff(NAT, SQUARES), compl(Arith(0, 4)),
)
