import pytest

from oracles import strict_squares_unfiltered
from pandigital.digits import DigitClass, Family, classify, to_digits
from pandigital.residues import aset, is_squarefree, two_adic_valuation
from pandigital.squares import (BudgetExceeded, check_root_residues, count_strict_squares,
                                enumerate_strict_squares, isqrt, predicted_existence,
                                square_existence_report, strict_value_range)

P, H, S, SH = Family.PANDIGITAL, Family.PENHOLODIGITAL, Family.SUBPANDIGITAL, Family.SUBPENHOLODIGITAL


@pytest.mark.parametrize("b, fam, rng", [
    (10, P, (1023456789, 9876543210)),
    (10, H, (123456789, 987654321)),
    (10, S, (102345678, 876543210)),
    (10, SH, (12345678, 87654321)),
])
def test_strict_value_range(b, fam, rng):
    assert strict_value_range(b, fam) == rng


def test_strict_value_range_rejects():
    with pytest.raises(ValueError):
        strict_value_range(2, SH)


@pytest.mark.parametrize("n, r", [(0, 0), (99, 9), (1023456789, 31991), (10**50, 10**25)])
def test_isqrt(n, r):
    assert isqrt(n) == r
    assert r * r <= n < (r + 1) ** 2


def test_known_roots():
    assert 11826 in enumerate_strict_squares(10, H).roots
    assert 11826 ** 2 == 139854276
    assert 32043 in enumerate_strict_squares(10, P).roots
    assert 32043 ** 2 == 1026753849


def test_base10_counts_against_oracle():
    # oracle counts: 87 pandigital, 30 penholodigital (the classic values)
    assert count_strict_squares(10, P) == len(strict_squares_unfiltered(10, "pandigital")) == 87
    assert count_strict_squares(10, H) == len(strict_squares_unfiltered(10, "penholodigital")) == 30


@pytest.mark.parametrize("b", [5, 13])
@pytest.mark.parametrize("fam", [P, H])
def test_empty_residue_set_short_circuits(b, fam):
    res = enumerate_strict_squares(b, fam)
    assert res.roots == () and res.scanned == 0


def test_count_matches_unpruned_at_base4():
    assert count_strict_squares(4, P) == len(strict_squares_unfiltered(4, "pandigital"))


@pytest.mark.parametrize("b", range(3, 13))
@pytest.mark.parametrize("fam", list(Family))
def test_pruned_equals_unpruned(b, fam):
    pruned = enumerate_strict_squares(b, fam)
    unpruned = enumerate_strict_squares(b, fam, residue_filter=False)
    assert pruned.roots == unpruned.roots
    assert pruned.scanned + pruned.filtered == unpruned.scanned
    assert check_root_residues(pruned)
    for m in pruned.roots:
        assert DigitClass(fam, True) in classify(to_digits(m * m, b))
    assert list(pruned.roots) == sorted(set(pruned.roots))


SINGLE_RESIDUE_BASES = [b for b in range(3, 40) if is_squarefree(b - 1)
                        and not (b % 2 and two_adic_valuation(b - 1) % 2 == 0)]


@pytest.mark.parametrize("b", SINGLE_RESIDUE_BASES)
def test_single_residue_cases(b):
    expected = 0 if b % 2 == 0 else (b - 1) // 2
    assert aset(b).members == (expected,)
    if b > 13:
        return
    for fam in Family:
        for m in enumerate_strict_squares(b, fam).roots:
            assert m % (b - 1) == expected


def test_chunking_and_jobs_do_not_change_result():
    ref = enumerate_strict_squares(11, P)
    assert enumerate_strict_squares(11, P, chunk_width=997) == ref
    assert enumerate_strict_squares(11, P, chunk_width=50_000, jobs=3) == ref


@pytest.mark.parametrize("b, fam", [(10, P), (10, S), (9, H), (12, P)])
def test_python_fallback_path_matches_vectorised(b, fam):
    from pandigital.squares import _scan_chunk, root_range
    lo, hi = root_range(b, fam)
    stop = min(hi + 1, lo + 200_000)
    members = aset(b).members
    args = (b, fam, lo, stop, b - 1, members)
    fast, slow = _scan_chunk(args), _scan_chunk(args, force_python=True)
    assert fast == slow
    assert fast[0] or b == 12


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as err:
        enumerate_strict_squares(18, P)
    assert err.value.estimated > 2 * 10**9
    assert enumerate_strict_squares(10, P, budget=None).count == 87
    with pytest.raises(BudgetExceeded):
        enumerate_strict_squares(10, P, budget=100)


def test_existence_report():
    rows = square_existence_report(range(5, 13), [P, H])
    assert all(r.status == "match" for r in rows)
    rows = square_existence_report(range(8, 13), [S, SH])
    assert all(r.status == "match" for r in rows)
    assert predicted_existence(4, P) is None
    assert predicted_existence(7, S) is None
    assert predicted_existence(13, S) is False
