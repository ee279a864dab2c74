import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from pandigital.digits import (DigitClass, DigitString, Family, classify, describe, digit_sum,
                               from_digits, parse, render, to_digits)

P, H, S, SH = Family.PANDIGITAL, Family.PENHOLODIGITAL, Family.SUBPANDIGITAL, Family.SUBPENHOLODIGITAL


def labels(*pairs):
    return frozenset(DigitClass(f, s) for f, s in pairs)


@pytest.mark.parametrize("n, b, digits", [
    (0, 10, (0,)),
    (37, 4, (2, 1, 1)),
    (68057976031, 12, (1, 1, 2, 3, 4, 5, 8, 10, 9, 6, 7)),
])
def test_to_digits(n, b, digits):
    assert to_digits(n, b).digits == digits


@pytest.mark.parametrize("digits, b, n", [
    ((1, 0), 2, 2),
    ((2, 1, 1), 4, 37),
    ((1, 0, 2, 3, 4, 5, 6, 7, 9, 8), 10, 1023456798),
])
def test_from_digits(digits, b, n):
    assert from_digits(DigitString(b, digits)) == n
    assert from_digits(digits, b) == n


def test_invalid_digit_strings():
    with pytest.raises(ValueError):
        to_digits(5, 1)
    with pytest.raises(ValueError):
        to_digits(-1, 10)
    with pytest.raises(ValueError):
        DigitString(10, (1, 10))
    with pytest.raises(ValueError):
        DigitString(10, (0, 1))
    with pytest.raises(ValueError):
        DigitString(10, ())


@pytest.mark.parametrize("n, b, s", [(1023456798, 10, 45), (123456798, 10, 45), (112345687, 10, 37)])
def test_digit_sum(n, b, s):
    assert digit_sum(to_digits(n, b)) == s


@pytest.mark.parametrize("n, expected", [
    (1023456798, labels((P, True), (P, False))),
    (10023546789, labels((P, False))),
    (123456798, labels((H, True), (H, False))),
    (1323546789, labels((H, False))),
    (120345687, labels((S, True), (S, False))),
    (87654123, labels((SH, True), (SH, False))),
    (1234, frozenset()),
])
def test_classify_base10(n, expected):
    assert classify(to_digits(n, 10)) == expected


def test_degenerate_small_bases():
    # 0 is the only subpandigital number in base 2
    assert DigitClass(S, True) in classify(to_digits(0, 2))
    assert all(DigitClass(S, False) not in classify(to_digits(n, 2)) for n in range(1, 200))
    assert all(not any(c.family is SH for c in classify(to_digits(n, 2))) for n in range(200))
    # base 2 penholodigital is all-ones; base 3 subpenholodigital too
    assert classify(to_digits(7, 2)) >= labels((H, False))
    assert classify(to_digits(13, 3)) >= labels((SH, False))


def test_describe():
    assert describe(classify(to_digits(1323546789, 10))) == "penholodigital (loose)"
    assert describe(classify(to_digits(1023456798, 10))) == "pandigital (strict)"
    assert describe(frozenset()) == "none"


@pytest.mark.parametrize("n, b, text", [
    (749149003087, 12, "10123459a867"),
    (5455573, 9, "11234567"),
    (1158045600182881261, 16, "10123456789acbed"),
])
def test_render_table_strings(n, b, text):
    assert render(to_digits(n, b)) == text
    assert parse(text, b).value == n


def test_render_modes():
    ds = DigitString(13, (1, 0, 12, 3))
    assert render(ds, "dot") == "1.0.12.3"
    assert render(ds, "alnum") == "10c3"
    assert render(ds) == "10c3"
    big = DigitString(40, (39, 0, 1))
    assert render(big) == "39.0.1"
    assert parse("39.0.1", 40) == big
    assert parse("1.0.12.3", 13) == ds
    with pytest.raises(ValueError):
        render(big, "alnum")


@pytest.mark.parametrize("text, b", [("12g", 16), ("1.0.13", 13), ("1a", 10), ("", 10), ("1..2", 40)])
def test_parse_rejects(text, b):
    with pytest.raises(ValueError):
        parse(text, b)


@given(st.integers(min_value=0, max_value=10**40), st.integers(min_value=2, max_value=36))
def test_round_trip(n, b):
    ds = to_digits(n, b)
    assert from_digits(ds) == n
    assert parse(render(ds), b) == ds
    assert ds.digits[0] != 0 or ds.digits == (0,)


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=37, max_value=500))
def test_round_trip_dot_mode(n, b):
    ds = to_digits(n, b)
    assert parse(render(ds), b) == ds


def test_digit_sum_congruence_random_pairs():
    rng = random.Random(20240611)
    for _ in range(10**5):
        b = rng.randrange(3, 1000)
        n = rng.getrandbits(rng.randrange(1, 200))
        assert (digit_sum(to_digits(n, b)) - n) % (b - 1) == 0


@given(st.integers(min_value=0, max_value=10**15), st.integers(min_value=2, max_value=20))
def test_strict_implies_loose(n, b):
    labs = classify(to_digits(n, b))
    for lab in labs:
        if lab.strict:
            assert DigitClass(lab.family, False) in labs
    assert not ({DigitClass(P, False), DigitClass(S, False)} <= labs)


@given(st.integers(min_value=3, max_value=16), st.randoms(use_true_random=False), st.sampled_from(list(Family)))
def test_strict_is_permutation_of_digit_set(b, rnd, family):
    digits = sorted(family.required(b))
    rnd.shuffle(digits)
    if digits[0] == 0:
        digits[0], digits[1] = digits[1], digits[0]
    ds = DigitString(b, tuple(digits))
    assert DigitClass(family, True) in classify(ds)
    expected = {P: b * (b - 1) // 2, H: b * (b - 1) // 2,
                S: (b - 1) * (b - 2) // 2, SH: (b - 1) * (b - 2) // 2}[family]
    assert digit_sum(ds) == expected


@pytest.mark.parametrize("b", [3, 4, 5, 6])
def test_strict_classification_exhaustive(b):
    # multiset comparison against the literal digit sets, over every number up to b^b
    sets = {P: set(range(b)), H: set(range(1, b)), S: set(range(b - 1)), SH: set(range(1, b - 1))}
    for n in range(b ** b):
        ds = to_digits(n, b)
        labs = classify(ds)
        for fam, req in sets.items():
            assert (DigitClass(fam, True) in labs) == (Counter(ds.digits) == Counter(req))
