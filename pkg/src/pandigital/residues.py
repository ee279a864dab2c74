"""Square roots of b(b-1)/2 modulo b-1, and the closed-form cases for them.

Every strict member of the four digit families has a digit sum congruent to
b(b-1)/2 modulo b-1, so a square root of such a number must reduce, modulo
b-1, to one of the residues computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

SQUAREFREE_LIMIT = 10**12


class Prediction(str, Enum):
    EMPTY = "empty"
    ZERO_ONLY = "zero-only"
    HALF_ONLY = "half-only"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class ResidueSet:
    base: int
    members: Tuple[int, ...]
    prediction: Prediction

    @property
    def modulus(self) -> int:
        return self.base - 1

    def __contains__(self, m: int) -> bool:
        return m % self.modulus in self.members

    def predicted_members(self) -> Tuple[int, ...] | None:
        return predicted_members(self.base, self.prediction)

    def agrees_with_theory(self) -> bool:
        expected = self.predicted_members()
        return expected is None or expected == self.members


def target_residue(b: int) -> int:
    return (b * (b - 1) // 2) % (b - 1)


def aset(b: int) -> ResidueSet:
    """All m in [0, b-2] with m^2 = b(b-1)/2 (mod b-1), by exhaustive scan."""
    if b < 3:
        raise ValueError(f"residue set needs base >= 3, got {b}")
    mod = b - 1
    t = target_residue(b)
    members = tuple(m for m in range(mod) if m * m % mod == t)
    return ResidueSet(b, members, aset_theory(b))


def two_adic_valuation(n: int) -> int:
    if n <= 0:
        raise ValueError("2-adic valuation needs a positive integer")
    return (n & -n).bit_length() - 1


def is_squarefree(n: int) -> bool:
    if n < 1:
        raise ValueError("squarefree test needs a positive integer")
    if n > SQUAREFREE_LIMIT:
        raise ValueError(f"{n} exceeds the trial-division budget {SQUAREFREE_LIMIT}")
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 1 if p == 2 else 2
    return True


def aset_theory(b: int) -> Prediction:
    """Closed-form shape of the residue set, where one is known.

    Empty when b is odd and v2(b-1) is even (it is then >= 2). The single
    residue cases hinge on b-1 being squarefree: 0 for even b, (b-1)/2 for
    odd b (v2(b-1) is then 1, so the empty case never overlaps).
    """
    if b < 3:
        raise ValueError(f"residue set needs base >= 3, got {b}")
    if b % 2 == 1 and two_adic_valuation(b - 1) % 2 == 0:
        return Prediction.EMPTY
    if is_squarefree(b - 1):
        return Prediction.ZERO_ONLY if b % 2 == 0 else Prediction.HALF_ONLY
    return Prediction.UNCONSTRAINED


def predicted_members(b: int, prediction: Prediction) -> Tuple[int, ...] | None:
    if prediction is Prediction.EMPTY:
        return ()
    if prediction is Prediction.ZERO_ONLY:
        return (0,)
    if prediction is Prediction.HALF_ONLY:
        return ((b - 1) // 2,)
    return None


def square_exists_predicted(b: int) -> bool:
    """Expected existence of strict family squares: b even or v2(b-1) odd."""
    return b % 2 == 0 or two_adic_valuation(b - 1) % 2 == 1
