"""Primality verdicts with an explicit certainty label.

Below 10^6 trial division decides. Below 2^64 a deterministic Miller-Rabin
decides. Above that, BPSW (strong base-2 test plus strong Lucas test with
Selfridge parameters) is run and a pass is reported as ``ProbablePrime``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt
from typing import Tuple

TRIAL_LIMIT = 10**6
DETERMINISTIC_LIMIT = 1 << 64

# Jim Sinclair's 7-base set; deterministic for every n < 2^64
# (see the table of best known Miller-Rabin bases at miller-rabin.appspot.com).
MR64_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


class Classification(str, Enum):
    PRIME = "prime"
    COMPOSITE = "composite"
    PROBABLE_PRIME = "probable-prime"


class Method(str, Enum):
    TRIAL_DIVISION = "trial-division"
    DETERMINISTIC_MR = "deterministic-mr"
    BPSW = "bpsw"


@dataclass(frozen=True)
class PrimalityVerdict:
    classification: Classification
    method: Method
    # for composites: ("factor", p), ("mr", base) or ("lucas", D)
    witness: Tuple[str, int] | None = None

    @property
    def is_prime(self) -> bool:
        return self.classification is not Classification.COMPOSITE

    @property
    def exact(self) -> bool:
        return self.classification is not Classification.PROBABLE_PRIME


def _small_primes(limit: int) -> Tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return tuple(i for i, v in enumerate(sieve) if v)


SMALL_PRIMES = _small_primes(isqrt(TRIAL_LIMIT))


def _strong_probable_prime(n: int, a: int) -> bool:
    """Strong Fermat test of odd n > 2 to base a."""
    a %= n
    if a == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _selfridge_d(n: int) -> int:
    """First D in 5, -7, 9, -11, ... with Jacobi(D/n) = -1, or 0 if n | D.

    Caller must rule out perfect squares first, else this never terminates.
    """
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            return d
        if j == 0 and abs(d) != n:
            return 0
        d = -d - 2 if d > 0 else -d + 2


def _strong_lucas_probable_prime(n: int, d: int) -> bool:
    p, q = 1, (1 - d) // 4
    delta = n + 1
    s = 0
    while delta % 2 == 0:
        delta //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    # left-to-right binary ladder for U_k, V_k, Q^k
    u, v, qk = 1, p, q % n
    for bit in bin(delta)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = half(p * u + v), half(d * u + p * v)
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def _trial(n: int, limit: int) -> int | None:
    """Smallest prime factor of n up to ``limit``, if any."""
    for p in SMALL_PRIMES:
        if p > limit:
            break
        if n % p == 0:
            return p
    return None


def is_prime(n: int) -> PrimalityVerdict:
    if n < 2:
        return PrimalityVerdict(Classification.COMPOSITE, Method.TRIAL_DIVISION)
    if n < TRIAL_LIMIT:
        p = _trial(n, isqrt(n))
        if p is None or p == n:
            return PrimalityVerdict(Classification.PRIME, Method.TRIAL_DIVISION)
        return PrimalityVerdict(Classification.COMPOSITE, Method.TRIAL_DIVISION, ("factor", p))

    p = _trial(n, 1000)
    if n < DETERMINISTIC_LIMIT:
        if p is not None:
            return PrimalityVerdict(Classification.COMPOSITE, Method.DETERMINISTIC_MR, ("factor", p))
        for a in MR64_WITNESSES:
            if not _strong_probable_prime(n, a):
                return PrimalityVerdict(Classification.COMPOSITE, Method.DETERMINISTIC_MR, ("mr", a))
        return PrimalityVerdict(Classification.PRIME, Method.DETERMINISTIC_MR)

    if p is not None:
        return PrimalityVerdict(Classification.COMPOSITE, Method.BPSW, ("factor", p))
    return bpsw(n)


def bpsw(n: int) -> PrimalityVerdict:
    """BPSW on an odd n with no tiny factors. Usable below 2^64 as a cross-check."""
    if n < 3 or n % 2 == 0:
        raise ValueError("bpsw expects an odd n >= 3")
    if not _strong_probable_prime(n, 2):
        return PrimalityVerdict(Classification.COMPOSITE, Method.BPSW, ("mr", 2))
    r = isqrt(n)
    if r * r == n:
        return PrimalityVerdict(Classification.COMPOSITE, Method.BPSW, ("factor", r))
    d = _selfridge_d(n)
    if d == 0:
        # n shares a factor with some |D| < n
        return PrimalityVerdict(Classification.COMPOSITE, Method.BPSW, ("factor", _d_factor(n)))
    if not _strong_lucas_probable_prime(n, d):
        return PrimalityVerdict(Classification.COMPOSITE, Method.BPSW, ("lucas", d))
    if n < DETERMINISTIC_LIMIT:
        return PrimalityVerdict(Classification.PRIME, Method.BPSW)
    return PrimalityVerdict(Classification.PROBABLE_PRIME, Method.BPSW)


def _d_factor(n: int) -> int:
    d = 5
    while True:
        g = gcd(abs(d), n)
        if 1 < g < n:
            return g
        d = -d - 2 if d > 0 else -d + 2


def verify_witness(n: int, verdict: PrimalityVerdict) -> bool:
    """Re-check that a composite verdict's witness really proves compositeness."""
    if verdict.classification is not Classification.COMPOSITE:
        return False
    if n < 2:
        return True
    if verdict.witness is None:
        return False
    kind, w = verdict.witness
    if kind == "factor":
        return 1 < w < n and n % w == 0
    if kind == "mr":
        return n % 2 == 1 and not _strong_probable_prime(n, w)
    if kind == "lucas":
        return _jacobi(w, n) == -1 and not _strong_lucas_probable_prime(n, w)
    return False


def isprime(n: int) -> bool:
    return is_prime(n).is_prime
