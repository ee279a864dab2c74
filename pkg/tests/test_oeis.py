import pytest
from hypothesis import given, strategies as st

from pandigital.oeis import (BfileError, BfileSeq, EmptyIntersection, compare, parse_bfile,
                             read_bfile, serialize_bfile)


def test_parse_with_comments():
    seq = parse_bfile("# comment\n1 0\n2 0\n3 1", "A258103")
    assert seq.entries == ((1, 0), (2, 0), (3, 1))
    assert seq.sequence_id == "A258103"


def test_parse_single_and_blank_lines():
    assert parse_bfile("\n5 1023456789\n\n").entries == ((5, 1023456789),)


@pytest.mark.parametrize("text, line", [("1 x", 1), ("1 2\n# c\n1 3", 3), ("1 2 3", 1), ("1 -4", 1),
                                        ("2 1\n1 1", 2)])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(BfileError) as err:
        parse_bfile(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_bad_sequence_id():
    with pytest.raises(BfileError):
        parse_bfile("1 1", "B12")


def test_read_bfile(tmp_path):
    p = tmp_path / "b370950.txt"
    p.write_text("10 30\n")
    assert read_bfile(p, "A370950").entries == ((10, 30),)


entries = st.lists(st.tuples(st.integers(-50, 10**6), st.integers(0, 10**30)), max_size=40).map(
    lambda xs: tuple(sorted(dict(xs).items())))


@given(entries)
def test_serialize_round_trip(es):
    seq = BfileSeq("A000001", es)
    assert parse_bfile(serialize_bfile(seq), "A000001") == seq


def test_compare_examples():
    ref = parse_bfile("10 0")
    assert compare([(10, 0)], ref).all_match
    rep = compare([(10, 5)], parse_bfile("10 6"))
    assert rep.mismatches == (10,) and rep.exit_status == 2
    with pytest.raises(EmptyIntersection):
        compare([(1, 0)], parse_bfile("10 0"))
    with pytest.raises(EmptyIntersection):
        compare([], ref)


def test_compare_only_on_intersection():
    rep = compare([(3, 1), (4, 9), (5, 2)], parse_bfile("4 9\n5 2\n6 7"))
    assert [r.index for r in rep.rows] == [4, 5]
    assert rep.matches == 2 and rep.exit_status == 0


@given(entries, entries)
def test_compare_symmetric(a, b):
    sa, sb = BfileSeq("", a), BfileSeq("", b)
    try:
        ab = compare(sa, sb)
    except EmptyIntersection:
        with pytest.raises(EmptyIntersection):
            compare(sb, sa)
        return
    ba = compare(sb, sa)
    assert ab.mismatches == ba.mismatches
    assert [(r.computed, r.reference) for r in ab.rows] == [(r.reference, r.computed) for r in ba.rows]
