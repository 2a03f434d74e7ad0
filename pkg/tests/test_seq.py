from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexworld.seq import (
    EPSeq,
    NotAdmissible,
    NotApplicable,
    ParseError,
    admissible,
    expand,
    first_difference,
    is_parry,
    lex_cmp,
    mirror,
    project,
    require_admissible,
    seq_dist,
    shift,
    varsigma,
)

P = EPSeq.parse
words = st.text(alphabet="01", max_size=6)
periods = st.text(alphabet="01", min_size=1, max_size=5)
seqs = st.builds(EPSeq, words, periods)


def naive_cmp(x: EPSeq, y: EPSeq, n: int = 200) -> int:
    a, b = x.prefix(n), y.prefix(n)
    return (a > b) - (a < b)


def test_parse_and_print():
    assert str(P("01(100)")) == "01(100)"
    assert P("(1010)") == P("(10)")
    assert P("1(01)") == P("(10)")
    with pytest.raises(ParseError) as exc:
        P("01(12)")
    assert exc.value.token == "01(12)"
    with pytest.raises(ParseError):
        P("0101")


def test_basic_examples():
    assert lex_cmp(P("(100)"), P("(10)")) == -1
    assert shift(P("01(100)"), 2) == P("(100)")
    assert expand(Fraction(5, 6)) == P("11(01)")
    assert expand(Fraction(1, 2)) == P("1(0)")
    assert project(P("(01)")) == Fraction(1, 3)


@given(seqs, seqs)
def test_lex_cmp_matches_long_prefix(x, y):
    assert lex_cmp(x, y) == naive_cmp(x, y)


@given(seqs, seqs)
def test_first_difference_and_distance(x, y):
    j = first_difference(x, y)
    if j is None:
        assert x == y and seq_dist(x, y) == 0
    else:
        assert x.prefix(j - 1) == y.prefix(j - 1) and x[j - 1] != y[j - 1]
        assert seq_dist(x, y) == Fraction(1, 2**j)


@given(seqs, st.integers(0, 12))
def test_shift_drops_symbols(x, n):
    assert shift(x, n).prefix(30) == x.prefix(n + 30)[n:]


@given(st.fractions(min_value=0, max_value=1, max_denominator=500))
def test_expand_round_trip(q):
    assert project(expand(q)) == q


@given(seqs)
def test_project_matches_float_sum(x):
    approx = sum(x[i] / 2 ** (i + 1) for i in range(60))
    assert abs(float(project(x)) - approx) < 1e-15


@given(seqs)
def test_mirror_involution(x):
    assert mirror(mirror(x)) == x


@given(seqs, seqs)
def test_mirror_reverses_order(x, y):
    assert lex_cmp(mirror(x), mirror(y)) == -lex_cmp(x, y)


def test_parry_and_varsigma():
    assert is_parry(P("(110)")) and is_parry(P("(1)")) and not is_parry(P("(101)"))
    assert varsigma(P("(101)")) == P("(10)")
    assert varsigma(P("(100110)")) == P("(100)")
    with pytest.raises(NotApplicable):
        varsigma(P("(110)"))


@given(seqs)
def test_varsigma_is_parry_and_below(x):
    x = x.prepend("1")
    if is_parry(x):
        return
    v = varsigma(x)
    assert is_parry(v)
    assert lex_cmp(v, x) <= 0


def test_admissible_examples():
    assert admissible(P("(1)"), P("(0)"))
    assert admissible(P("(110)"), P("(001)"))
    assert admissible(P("(10)"), P("(01)"))
    bad = admissible(P("(10)"), P("(1)"))
    assert not bad and bad.verdict == "Extremal"
    with pytest.raises(NotAdmissible):
        require_admissible(P("(101)"), P("(0)"))


def brute_admissible(a: EPSeq, b: EPSeq, n: int = 60) -> bool:
    sa = [a.prefix(n + 60)[k:][:60] for k in range(n)]
    sb = [b.prefix(n + 60)[k:][:60] for k in range(n)]
    A, B = sa[0], sb[0]
    return A[0] == "1" and B[0] == "0" and all(B <= s <= A for s in sa + sb)


@given(seqs, seqs)
def test_admissible_matches_prefix_check(x, y):
    a, b = x.prepend("1"), y.prepend("0")
    assert bool(admissible(a, b)) == brute_admissible(a, b)
