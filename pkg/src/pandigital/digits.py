"""Base-b digit strings, digit sums and the eight digit-class predicates."""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Sequence, Tuple

ALPHABET = string.digits + string.ascii_lowercase
MAX_ALNUM_BASE = len(ALPHABET)


class Family(str, Enum):
    PANDIGITAL = "pandigital"
    PENHOLODIGITAL = "penholodigital"
    SUBPANDIGITAL = "subpandigital"
    SUBPENHOLODIGITAL = "subpenholodigital"

    @property
    def is_sub(self) -> bool:
        return self in (Family.SUBPANDIGITAL, Family.SUBPENHOLODIGITAL)

    @property
    def allows_zero(self) -> bool:
        return self in (Family.PANDIGITAL, Family.SUBPANDIGITAL)

    def min_base(self) -> int:
        return 3 if self.is_sub else 2

    def required(self, b: int) -> FrozenSet[int]:
        """Digits that must each appear at least once in base ``b``."""
        lo = 0 if self.allows_zero else 1
        hi = b - 2 if self.is_sub else b - 1
        return frozenset(range(lo, hi + 1))

    def forbidden(self, b: int) -> FrozenSet[int]:
        out = set()
        if not self.allows_zero:
            out.add(0)
        if self.is_sub:
            out.add(b - 1)
        return frozenset(out)

    def allowed(self, b: int) -> Tuple[int, ...]:
        banned = self.forbidden(b)
        return tuple(d for d in range(b) if d not in banned)

    def strict_length(self, b: int) -> int:
        return len(self.required(b))

    @classmethod
    def parse(cls, name: str) -> "Family":
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise ValueError(f"unknown family {name!r}; expected one of {choices}") from None


@dataclass(frozen=True, order=True)
class DigitClass:
    family: Family
    strict: bool

    def label(self) -> str:
        return f"{self.family.value} ({'strict' if self.strict else 'loose'})"


@dataclass(frozen=True)
class DigitString:
    """A base-``b`` representation, most significant digit first."""

    base: int
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        digits = tuple(int(d) for d in self.digits)
        object.__setattr__(self, "digits", digits)
        if not digits:
            raise ValueError("a digit string needs at least one digit")
        for d in digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        if len(digits) > 1 and digits[0] == 0:
            raise ValueError("leading zero in a multi-digit string")

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return from_digits(self)

    def __str__(self) -> str:
        return render(self)


def to_digits(n: int, b: int) -> DigitString:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError("negative numbers have no digit string here")
    if n == 0:
        return DigitString(b, (0,))
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return DigitString(b, tuple(reversed(out)))


def from_digits(ds: DigitString | Sequence[int], b: int | None = None) -> int:
    """Value of a digit string. A bare sequence needs ``b``."""
    if not isinstance(ds, DigitString):
        if b is None:
            raise TypeError("base required for a bare digit sequence")
        ds = DigitString(b, tuple(ds))
    n = 0
    for d in ds.digits:
        n = n * ds.base + d
    return n


def digit_sum(ds: DigitString) -> int:
    return sum(ds.digits)


def is_member(ds: DigitString, family: Family, strict: bool = False) -> bool:
    # base 2 needs no special case: subpandigital admits only "0" and
    # subpenholodigital forbids both digits
    b = ds.base
    present = set(ds.digits)
    if not family.required(b) <= present or present & family.forbidden(b):
        return False
    return not strict or len(ds.digits) == len(family.required(b))


def classify(ds: DigitString) -> FrozenSet[DigitClass]:
    labels = set()
    for family in Family:
        if is_member(ds, family):
            labels.add(DigitClass(family, False))
            if is_member(ds, family, strict=True):
                labels.add(DigitClass(family, True))
    return frozenset(labels)


def describe(labels: Iterable[DigitClass]) -> str:
    """Human-readable labels, strict entries folded into their family."""
    by_family = {}
    for lab in labels:
        by_family[lab.family] = by_family.get(lab.family, False) or lab.strict
    parts = [f"{f.value} ({'strict' if s else 'loose'})" for f, s in
             sorted(by_family.items(), key=lambda kv: list(Family).index(kv[0]))]
    return ", ".join(parts) if parts else "none"


def render(ds: DigitString, mode: str = "auto") -> str:
    """Text form: 0-9a-z for bases up to 36, dot-separated decimals otherwise.

    ``mode`` is ``"auto"``, ``"alnum"`` or ``"dot"``.
    """
    if mode == "auto":
        mode = "alnum" if ds.base <= MAX_ALNUM_BASE else "dot"
    if mode == "dot":
        return ".".join(str(d) for d in ds.digits)
    if mode != "alnum":
        raise ValueError(f"unknown render mode {mode!r}")
    if ds.base > MAX_ALNUM_BASE:
        raise ValueError(f"alphanumeric rendering only covers bases <= {MAX_ALNUM_BASE}")
    return "".join(ALPHABET[d] for d in ds.digits)


def parse(text: str, b: int) -> DigitString:
    text = text.strip()
    if not text:
        raise ValueError("empty digit string")
    if "." in text or b > MAX_ALNUM_BASE:
        try:
            digits = tuple(int(tok) for tok in text.split("."))
        except ValueError:
            raise ValueError(f"bad dot-separated digit string {text!r}") from None
    else:
        digits = []
        for ch in text.lower():
            d = ALPHABET.find(ch)
            if d < 0:
                raise ValueError(f"character {ch!r} is not a digit")
            digits.append(d)
        digits = tuple(digits)
    for d in digits:
        if not 0 <= d < b:
            raise ValueError(f"digit {d} out of range for base {b}")
    return DigitString(b, digits)
