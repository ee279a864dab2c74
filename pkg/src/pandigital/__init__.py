"""Pandigital, penholodigital and sub-family numbers: classification, squares, primes."""

__version__ = "0.1.0"

from .digits import (DigitClass, DigitString, Family, classify, digit_sum, from_digits,
                     parse, render, to_digits)
from .primality import PrimalityVerdict, is_prime
from .residues import ResidueSet, aset, aset_theory, is_squarefree, two_adic_valuation
from .search import (BoundSpec, SearchReport, candidate_stream, lower_bound, prune_multiset,
                     smallest_prime)
from .squares import (SquareScanResult, count_strict_squares, enumerate_strict_squares, isqrt,
                      strict_value_range)
from .oeis import BfileSeq, compare, parse_bfile

__all__ = [
    "BfileSeq", "BoundSpec", "DigitClass", "DigitString", "Family", "PrimalityVerdict",
    "ResidueSet", "SearchReport", "SquareScanResult", "aset", "aset_theory", "candidate_stream",
    "classify", "compare", "count_strict_squares", "digit_sum", "enumerate_strict_squares",
    "from_digits", "is_prime", "is_squarefree", "isqrt", "lower_bound", "parse", "parse_bfile",
    "prune_multiset", "render", "smallest_prime", "strict_value_range", "to_digits",
    "two_adic_valuation",
]
