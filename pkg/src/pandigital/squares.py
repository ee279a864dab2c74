"""Strict pandigital-family squares, found by scanning square roots.

The root range is cut into fixed-width chunks. Within a chunk only roots
whose residue modulo b-1 lies in the residue set are squared and checked.
Chunks are independent, so they may run in a process pool. Results are
concatenated in chunk order, so the output does not depend on the worker
count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .digits import Family, to_digits
from .residues import aset, square_exists_predicted

DEFAULT_BUDGET = 2 * 10**9
CHUNK_WIDTH = 1 << 22
_INT64_MAX = (1 << 63) - 1


class BudgetExceeded(RuntimeError):
    def __init__(self, estimated: int, budget: int):
        super().__init__(
            f"scan needs about {estimated} candidates, over the budget of {budget}; "
            "raise the budget to run it anyway")
        self.estimated = estimated
        self.budget = budget


@dataclass(frozen=True)
class SquareScanResult:
    base: int
    family: Family
    roots: Tuple[int, ...]
    scanned: int
    filtered: int

    @property
    def count(self) -> int:
        return len(self.roots)

    @property
    def squares(self) -> Tuple[int, ...]:
        return tuple(m * m for m in self.roots)


def isqrt(n: int) -> int:
    return math.isqrt(n)


def strict_value_range(b: int, family: Family) -> Tuple[int, int]:
    """Smallest and largest strict members of ``family`` in base ``b``."""
    if b < family.min_base():
        raise ValueError(f"{family.value} needs base >= {family.min_base()}, got {b}")
    digits = sorted(family.required(b))
    if not digits:
        raise ValueError(f"{family.value} is empty in base {b}")
    if len(digits) > 1 and digits[0] == 0:
        digits[0], digits[1] = digits[1], digits[0]
    lo = 0
    for d in digits:
        lo = lo * b + d
    hi = 0
    for d in sorted(family.required(b), reverse=True):
        hi = hi * b + d
    return lo, hi


def root_range(b: int, family: Family) -> Tuple[int, int]:
    """Inclusive range of m with m^2 inside the strict value range."""
    lo, hi = strict_value_range(b, family)
    return (isqrt(lo - 1) + 1 if lo > 0 else 0), isqrt(hi)


def _required_mask(b: int, family: Family) -> int:
    return sum(1 << d for d in family.required(b))


def _count_in_class(start: int, stop: int, r: int, mod: int) -> int:
    """How many m in [start, stop) have m = r (mod mod)."""
    first = start + (r - start) % mod
    return 0 if first >= stop else (stop - 1 - first) // mod + 1


def _residues(b: int, residue_filter: bool) -> Tuple[int, Tuple[int, ...]]:
    if not residue_filter or b < 3:
        return 1, (0,)
    return b - 1, aset(b).members


def estimate_candidates(b: int, family: Family, residue_filter: bool = True) -> int:
    r_lo, r_hi = root_range(b, family)
    mod, members = _residues(b, residue_filter)
    return sum(_count_in_class(r_lo, r_hi + 1, r, mod) for r in members)


def _scan_chunk(args, force_python: bool = False) -> Tuple[List[int], int, int]:
    b, family, start, stop, mod, members = args
    width = stop - start
    req = _required_mask(b, family)
    length = family.strict_length(b)
    found: List[int] = []
    scanned = 0
    _, hi = strict_value_range(b, family)
    vectorised = not force_python and (stop - 1) ** 2 <= _INT64_MAX and hi <= _INT64_MAX
    for r in members:
        first = start + (r - start) % mod
        if first >= stop:
            continue
        if vectorised:
            roots = np.arange(first, stop, mod, dtype=np.int64)
            scanned += len(roots)
            sq = roots * roots
            mask = np.zeros_like(sq)
            for _ in range(length):
                sq, d = np.divmod(sq, b)
                mask |= np.left_shift(1, d)
            hit = (mask == req) & (sq == 0)
            found.extend(int(m) for m in roots[hit])
        else:
            for m in range(first, stop, mod):
                scanned += 1
                ds = to_digits(m * m, b).digits
                if len(ds) != length:
                    continue
                mask = 0
                for d in ds:
                    mask |= 1 << d
                if mask == req:
                    found.append(m)
    found.sort()
    return found, scanned, width - scanned


def _chunks(b: int, family: Family, residue_filter: bool, chunk_width: int) -> Iterator[tuple]:
    r_lo, r_hi = root_range(b, family)
    mod, members = _residues(b, residue_filter)
    for start in range(r_lo, r_hi + 1, chunk_width):
        yield (b, family, start, min(start + chunk_width, r_hi + 1), mod, members)


def enumerate_strict_squares(b: int, family: Family, *, budget: int | None = DEFAULT_BUDGET,
                             jobs: int = 1, residue_filter: bool = True,
                             chunk_width: int = CHUNK_WIDTH) -> SquareScanResult:
    """All roots m with m^2 a strict member of ``family`` in base ``b``.

    With ``residue_filter`` an empty residue set returns at once without
    scanning. ``budget`` caps the number of post-filter candidates (None
    disables the cap).
    """
    family = Family(family)
    r_lo, r_hi = root_range(b, family)
    width = r_hi - r_lo + 1
    if residue_filter and b >= 3 and not aset(b).members:
        return SquareScanResult(b, family, (), 0, width)
    estimated = estimate_candidates(b, family, residue_filter)
    if budget is not None and estimated > budget:
        raise BudgetExceeded(estimated, budget)

    tasks = list(_chunks(b, family, residue_filter, chunk_width))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, tasks))
    else:
        parts = [_scan_chunk(t) for t in tasks]

    roots: List[int] = []
    scanned = filtered = 0
    for found, s, f in parts:
        roots.extend(found)
        scanned += s
        filtered += f
    return SquareScanResult(b, family, tuple(roots), scanned, filtered)


def count_strict_squares(b: int, family: Family, **kwargs) -> int:
    return enumerate_strict_squares(b, family, **kwargs).count


def check_root_residues(result: SquareScanResult) -> bool:
    """Every root reduces into the residue set modulo b-1."""
    if result.base < 3:
        return True
    members = set(aset(result.base).members)
    return all(m % (result.base - 1) in members for m in result.roots)



@dataclass(frozen=True)
class ExistenceRow:
    base: int
    family: Family
    count: int
    predicted: bool | None

    @property
    def status(self) -> str:
        if self.predicted is None:
            return "n/a"
        return "match" if self.predicted == (self.count > 0) else "mismatch"


def predicted_existence(b: int, family: Family) -> bool | None:
    """Conjectured existence of strict squares (b even or v2(b-1) odd).

    Only claimed for b > 4, or b > 7 for the sub families; None elsewhere.
    """
    if b <= (7 if Family(family).is_sub else 4):
        return None
    return square_exists_predicted(b)


def square_existence_report(bases: Sequence[int], families: Sequence[Family],
                            **scan_kwargs) -> List[ExistenceRow]:
    rows = []
    for b in bases:
        for family in families:
            count = count_strict_squares(b, family, **scan_kwargs)
            rows.append(ExistenceRow(b, Family(family), count, predicted_existence(b, family)))
    return rows
