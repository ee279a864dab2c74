"""Lower bounds and smallest-prime search for the loose digit families.

Candidates of a fixed length are grouped by digit multiset. Each multiset
yields its arrangements in increasing order (lexicographic next-permutation),
and a heap merges those streams into one increasing stream. A multiset whose
digit sum shares a factor g > 1 with b-1 makes every arrangement a multiple
of g, so it is dropped before any arrangement is generated.
"""

from __future__ import annotations

import heapq
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

from .digits import DigitString, Family, from_digits
from .primality import PrimalityVerdict, is_prime

DEFAULT_BUDGET = 10**8
STATE_FORMAT = "pandigital-search-state"
STATE_VERSION = 1


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, state: "SearchState"):
        super().__init__(
            f"no prime after {state.candidates_tested} candidates in base {state.base} "
            f"({state.family.value}); resume from the saved state with a larger budget")
        self.state = state


# -- lower bounds -----------------------------------------------------------

class BoundSource(str, Enum):
    DIGIT_PATTERN = "digit-pattern"      # 10123...  /  1123...
    PARITY_IMPROVED = "parity-improved"  # 10223...  /  1223...  for b = 3 (mod 4)


@dataclass(frozen=True)
class BoundSpec:
    base: int
    family: Family
    bound_value: int
    bound_digits: DigitString
    source: BoundSource
    # (b^b - b^2 + b - 1)/(b-1)^2 + ... for the full families and
    # (b^(b-1) - b)/(b-1)^2 + ... for the sub families, evaluated as written
    closed_form: Fraction
    # same, with the sub-family leading term corrected to
    # (b^(b-1) - b^2 + 2b - 2)/(b-1)^2
    exact_closed_form: Fraction

    @property
    def closed_form_matches(self) -> bool:
        return self.closed_form == self.bound_value

    def warning(self) -> str | None:
        if self.closed_form_matches:
            return None
        return (f"closed form evaluates to {_fraction_text(self.closed_form)}, not the digit "
                f"pattern's value {self.bound_value}; corrected closed form gives "
                f"{_fraction_text(self.exact_closed_form)}")


def _fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def smallest_arrangement(multiset: Sequence[int]) -> Tuple[int, ...]:
    """Least arrangement without a leading zero (unless it is just "0")."""
    digits = sorted(multiset)
    if len(digits) > 1 and digits[0] == 0:
        for i, d in enumerate(digits):
            if d:
                digits.insert(0, digits.pop(i))
                break
    return tuple(digits)


def _closed_forms(b: int, family: Family, parity: bool) -> Tuple[Fraction, Fraction]:
    if family.is_sub:
        literal = Fraction(b ** (b - 1) - b, (b - 1) ** 2)
        exact = Fraction(b ** (b - 1) - b * b + 2 * b - 2, (b - 1) ** 2)
        lead = b ** (b - 1) if family is Family.SUBPANDIGITAL else b ** (b - 2)
        bump = b ** (b - 3)
    else:
        literal = exact = Fraction(b ** b - b * b + b - 1, (b - 1) ** 2)
        lead = b ** b if family is Family.PANDIGITAL else b ** (b - 1)
        bump = b ** (b - 2)
    extra = lead + (bump if parity else 0)
    return literal + extra, exact + extra


def lower_bound(b: int, family: Family) -> BoundSpec:
    """Least possible prime of the family, from the digit pattern.

    Strict members are never prime for b > 3, so a prime carries at least one
    extra digit; the smallest pattern adds a 1. For b = 3 (mod 4) a single
    extra 1 leaves the digit sum even (and b-1 even), so the extra digit is 2.
    """
    family = Family(family)
    if b <= 3:
        raise ValueError(f"lower bounds need base > 3, got {b}")
    parity = b % 4 == 3
    extra = 2 if parity else 1
    digits = smallest_arrangement(sorted(family.required(b)) + [extra])
    ds = DigitString(b, digits)
    literal, exact = _closed_forms(b, family, parity)
    source = BoundSource.PARITY_IMPROVED if parity else BoundSource.DIGIT_PATTERN
    return BoundSpec(b, family, from_digits(ds), ds, source, literal, exact)


# -- multiset streams -------------------------------------------------------

@dataclass(frozen=True)
class PruneDecision:
    keep: bool
    divisor: int | None = None


def prune_multiset(b: int, multiset: Sequence[int]) -> PruneDecision:
    """Drop a multiset when every arrangement is a proper multiple of some g > 1."""
    if b < 3:
        raise ValueError(f"pruning needs base >= 3, got {b}")
    g = gcd(b - 1, sum(multiset))
    if g > 1 and from_digits(smallest_arrangement(multiset), b) > g:
        return PruneDecision(False, g)
    return PruneDecision(True)


def next_permutation(seq: List[int]) -> bool:
    """Advance ``seq`` in place to its lexicographic successor; False at the last one."""
    i = len(seq) - 2
    while i >= 0 and seq[i] >= seq[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(seq) - 1
    while seq[j] <= seq[i]:
        j -= 1
    seq[i], seq[j] = seq[j], seq[i]
    seq[i + 1:] = reversed(seq[i + 1:])
    return True


def family_multisets(b: int, family: Family, k: int) -> Iterator[Tuple[int, ...]]:
    """Every length-k digit multiset holding the required digits and no forbidden ones."""
    required = sorted(family.required(b))
    if k < len(required):
        raise ValueError(f"{family.value} numbers in base {b} need at least {len(required)} digits")
    for extra in combinations_with_replacement(family.allowed(b), k - len(required)):
        ms = tuple(sorted(required + list(extra)))
        if k > 1 and not any(ms):
            continue
        yield ms


class _Cursor:
    __slots__ = ("multiset", "current")

    def __init__(self, multiset: Tuple[int, ...], current: Optional[Sequence[int]] = None):
        self.multiset = multiset
        self.current = list(current if current is not None else smallest_arrangement(multiset))

    def advance(self) -> bool:
        if not next_permutation(self.current):
            self.current = None
            return False
        return True


class _Merger:
    """Increasing merge of per-multiset arrangement streams."""

    def __init__(self, base: int, cursors: List[_Cursor]):
        self.base = base
        self.cursors = cursors
        self.heap = [(from_digits(c.current, base), i) for i, c in enumerate(cursors)
                     if c.current is not None]
        heapq.heapify(self.heap)

    def __bool__(self) -> bool:
        return bool(self.heap)

    def pop(self) -> Tuple[int, Tuple[int, ...]]:
        value, i = self.heap[0]
        cur = self.cursors[i]
        digits = tuple(cur.current)
        if cur.advance():
            heapq.heapreplace(self.heap, (from_digits(cur.current, self.base), i))
        else:
            heapq.heappop(self.heap)
        return value, digits

    def take(self, n: int) -> List[Tuple[int, Tuple[int, ...]]]:
        out = []
        while self.heap and len(out) < n:
            out.append(self.pop())
        return out

    def snapshot(self) -> List[Tuple[Tuple[int, ...], Optional[Tuple[int, ...]]]]:
        return [(c.multiset, None if c.current is None else tuple(c.current)) for c in self.cursors]


def candidate_stream(b: int, family: Family, k: int) -> Iterator[int]:
    """All k-digit loose members of ``family`` in base ``b``, increasing, no pruning."""
    family = Family(family)
    merger = _Merger(b, [_Cursor(ms) for ms in family_multisets(b, family, k)])
    while merger:
        yield merger.pop()[0]


# -- resumable search -------------------------------------------------------

@dataclass
class SearchState:
    base: int
    family: Family
    k: int
    candidates_tested: int = 0
    multisets_pruned: int = 0
    # (multiset, next untested arrangement or None once exhausted)
    cursors: List[Tuple[Tuple[int, ...], Optional[Tuple[int, ...]]]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "format": STATE_FORMAT,
            "version": STATE_VERSION,
            "base": self.base,
            "family": self.family.value,
            "k": self.k,
            "candidates_tested": self.candidates_tested,
            "multisets_pruned": self.multisets_pruned,
            "cursors": [{"multiset": list(ms), "next": None if nxt is None else list(nxt)}
                        for ms, nxt in self.cursors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchState":
        if data.get("format") != STATE_FORMAT:
            raise ValueError("not a search state file")
        if data.get("version") != STATE_VERSION:
            raise ValueError(f"unsupported search state version {data.get('version')}")
        cursors = [(tuple(c["multiset"]), None if c["next"] is None else tuple(c["next"]))
                   for c in data["cursors"]]
        return cls(int(data["base"]), Family(data["family"]), int(data["k"]),
                   int(data["candidates_tested"]), int(data["multisets_pruned"]), cursors)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "SearchState":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SearchReport:
    base: int
    family: Family
    smallest_prime: int
    digits: DigitString
    digit_sum: int
    verdict: PrimalityVerdict
    candidates_tested: int
    multisets_pruned: int

    @property
    def digit_length(self) -> int:
        return len(self.digits)


def _level(b: int, family: Family, k: int) -> Tuple[List[_Cursor], int]:
    cursors, pruned = [], 0
    for ms in family_multisets(b, family, k):
        if prune_multiset(b, ms).keep:
            cursors.append(_Cursor(ms))
        else:
            pruned += 1
    return cursors, pruned


def smallest_prime(b: int, family: Family, *, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                   batch_size: int | None = None,
                   state: SearchState | None = None) -> SearchReport:
    """Smallest (loose) prime member of ``family`` in base ``b``.

    Candidates are tested strictly in increasing order; with ``jobs > 1``
    consecutive batches are tested in a process pool, and the first prime of
    the earliest batch wins, so the report does not depend on batching.
    Raises SearchBudgetExceeded, carrying a resumable state, after ``budget``
    primality tests.
    """
    family = Family(family)
    if b < 3:
        raise ValueError(f"prime search needs base >= 3, got {b}")
    if batch_size is None:
        batch_size = 1 if jobs <= 1 else 64 * jobs
    if state is not None:
        if (state.base, state.family) != (b, family):
            raise ValueError("search state belongs to a different base or family")
        k, tested, pruned = state.k, state.candidates_tested, state.multisets_pruned
        cursors = [_Cursor(ms, nxt) for ms, nxt in state.cursors]
        for c in cursors:
            if c.current is not None and sorted(c.current) != list(c.multiset):
                raise ValueError("corrupt search state: cursor is not an arrangement of its multiset")
    else:
        k, tested, pruned = family.strict_length(b), 0, 0
        cursors, p = _level(b, family, k)
        pruned += p

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while True:
            merger = _Merger(b, cursors)
            while merger:
                room = budget - tested
                if room <= 0:
                    raise SearchBudgetExceeded(SearchState(b, family, k, tested, pruned, merger.snapshot()))
                batch = merger.take(min(batch_size, room))
                values = [v for v, _ in batch]
                if pool is not None and len(values) > 1:
                    verdicts = list(pool.map(is_prime, values, chunksize=max(1, len(values) // jobs)))
                else:
                    verdicts = [is_prime(v) for v in values]
                for i, verdict in enumerate(verdicts):
                    if verdict.is_prime:
                        value, digits = batch[i]
                        return SearchReport(b, family, value, DigitString(b, digits), sum(digits),
                                            verdict, tested + i + 1, pruned)
                tested += len(batch)
            k += 1
            cursors, p = _level(b, family, k)
            pruned += p
    finally:
        if pool is not None:
            pool.shutdown()


# -- digit-sum conjecture harness ------------------------------------------

@dataclass(frozen=True)
class DigitSumRow:
    base: int
    family: Family
    smallest_prime: int
    digits: DigitString
    digit_sum: int
    predicted: int | None

    @property
    def status(self) -> str:
        if self.predicted is None:
            return "n/a"
        return "match" if self.predicted == self.digit_sum else "mismatch"


def predicted_digit_sum(b: int, family: Family) -> int | None:
    """Conjectured digit sum of the smallest prime, or None outside its range."""
    family = Family(family)
    if family.is_sub:
        if b <= 4:
            return None
        strict_sum = (b - 2) * (b - 1) // 2
    else:
        if b <= 3:
            return None
        strict_sum = b * (b - 1) // 2
    return strict_sum + (2 if b % 4 == 3 else 1)


def conjecture_digit_sum_report(bases: Sequence[int], family: Family, *,
                                budget: int = DEFAULT_BUDGET, jobs: int = 1) -> List[DigitSumRow]:
    family = Family(family)
    rows = []
    for b in bases:
        rep = smallest_prime(b, family, budget=budget, jobs=jobs)
        rows.append(DigitSumRow(b, family, rep.smallest_prime, rep.digits, rep.digit_sum,
                                predicted_digit_sum(b, family)))
    return rows
