"""OEIS b-file parsing and comparison against computed sequences.

A b-file is plain text with one ``index value`` pair per line. Lines starting
with ``#`` and blank lines are ignored. Files are read from local disk only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

_SEQ_ID = re.compile(r"^A\d{6}$")


class BfileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class EmptyIntersection(ValueError):
    pass


@dataclass(frozen=True)
class BfileSeq:
    sequence_id: str
    entries: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> dict:
        return dict(self.entries)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.entries)


def parse_bfile(text: str, sequence_id: str = "") -> BfileSeq:
    if sequence_id and not _SEQ_ID.match(sequence_id):
        raise BfileError(f"bad sequence id {sequence_id!r}")
    entries: List[Tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BfileError(f"expected 'index value', got {raw!r}", lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BfileError(f"non-integer token in {raw!r}", lineno) from None
        if value < 0:
            raise BfileError(f"negative value {value}", lineno)
        if entries and index <= entries[-1][0]:
            raise BfileError(f"index {index} does not increase", lineno)
        entries.append((index, value))
    return BfileSeq(sequence_id, tuple(entries))


def read_bfile(path: str | Path, sequence_id: str = "") -> BfileSeq:
    return parse_bfile(Path(path).read_text(), sequence_id)


def serialize_bfile(seq: BfileSeq | Iterable[Tuple[int, int]]) -> str:
    entries = seq.entries if isinstance(seq, BfileSeq) else tuple(seq)
    head = f"# {seq.sequence_id}\n" if isinstance(seq, BfileSeq) and seq.sequence_id else ""
    return head + "".join(f"{i} {v}\n" for i, v in entries)


@dataclass(frozen=True)
class CompareRow:
    index: int
    computed: int
    reference: int

    @property
    def match(self) -> bool:
        return self.computed == self.reference


@dataclass(frozen=True)
class CompareReport:
    sequence_id: str
    rows: Tuple[CompareRow, ...]

    @property
    def matches(self) -> int:
        return sum(r.match for r in self.rows)

    @property
    def mismatches(self) -> Tuple[int, ...]:
        return tuple(r.index for r in self.rows if not r.match)

    @property
    def all_match(self) -> bool:
        return not self.mismatches

    @property
    def exit_status(self) -> int:
        return 0 if self.all_match else 2


def compare(computed: Sequence[Tuple[int, int]] | BfileSeq, reference: BfileSeq) -> CompareReport:
    """Per-index comparison over the indices both sides cover."""
    if isinstance(computed, BfileSeq):
        computed = computed.entries
    if not computed or not reference.entries:
        raise EmptyIntersection("nothing to compare: one side is empty")
    ref = reference.as_dict()
    rows = tuple(CompareRow(i, v, ref[i]) for i, v in sorted(computed) if i in ref)
    if not rows:
        raise EmptyIntersection(
            f"computed indices {min(computed)[0]}..{max(computed)[0]} do not overlap "
            f"{reference.sequence_id or 'reference'} indices "
            f"{reference.entries[0][0]}..{reference.entries[-1][0]}")
    return CompareReport(reference.sequence_id, rows)
