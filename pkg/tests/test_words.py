"""Word parsing, evaluation, index functions, B-separation."""

import random

import pytest

from goldenbeta.algebra import FieldElem, ODD, make_params
from goldenbeta.words import (
    IND_INF,
    MINUS,
    PLUS,
    DigitWord,
    EvPeriodicWord,
    ParseError,
    format_word,
    ind,
    is_B_separated,
    parse_word,
    word_tail,
    word_value,
)

P1 = make_params(1, ODD)
P2 = make_params(2, ODD)


def test_parse_examples():
    w = parse_word("0.2,2", P1)
    assert isinstance(w, DigitWord) and w.digits == (2, 2)
    w = parse_word("0.1,(3)*", P1)
    assert isinstance(w, EvPeriodicWord)
    assert (w.preperiod, w.period) == ((1,), (3,))


def test_parse_rejects():
    with pytest.raises(ParseError, match="digit 4"):
        parse_word("0.4,1", P1)
    with pytest.raises(ParseError, match="empty period"):
        parse_word("0.1,()*", P1)
    with pytest.raises(ParseError):
        parse_word("0.1,,2", P1)


def test_roundtrip():
    for text in ("0.2,2", "1.0,(1,2)*", "0.(2,1)*", "0.", "2.0", "0.3,(0,3)*"):
        w = parse_word(text, P1)
        assert (word_value(parse_word(format_word(w), P1), P1)
                - word_value(w, P1)).is_zero()


def test_value_examples():
    one = P1.one
    assert (word_value(parse_word("0.2,2", P1), P1) - one).is_zero()
    assert (word_value(parse_word("0.1,(3)*", P1), P1) - one).is_zero()
    # 0.(3)* = beta - 1
    assert (word_value(parse_word("0.(3)*", P1), P1)
            - FieldElem(P1, 1, -1, 1)).is_zero()


def test_value_k2():
    one = P2.one
    assert (word_value(parse_word("0.3,3", P2), P2) - one).is_zero()
    assert (word_value(parse_word("0.2,(5)*", P2), P2) - one).is_zero()
    assert (word_value(parse_word("0.(3,2)*", P2), P2) - one).is_zero()


def test_canonical_period():
    w = EvPeriodicWord(0, (), (1, 2, 1, 2))
    assert w.period == (1, 2)
    # preperiod tail matching the period rotates into it
    w = EvPeriodicWord(0, (3, 1), (2, 1))
    assert (w.preperiod, w.period) == ((3,), (1, 2))
    # all-zero period collapses and the word counts as finite
    w = EvPeriodicWord(0, (2,), (0, 0))
    assert w.period == (0,) and w.is_finite()


def test_digit_at_and_prefix():
    w = EvPeriodicWord(0, (1,), (3, 0))
    assert [w.digit_at(i) for i in range(1, 6)] == [1, 3, 0, 3, 0]
    assert w.prefix(4) == (1, 3, 0, 3)


def test_is_B_separated():
    assert is_B_separated(DigitWord(0, (2, 0, 3)), P1)
    assert not is_B_separated(DigitWord(0, (3, 3)), P1)
    assert is_B_separated(DigitWord(0, (0, 1, 2)), P1)
    # the period wrap counts: (2)(1,2) ends ...2,1,2,1,2... fine,
    # but period (2,) alone repeats 2,2,2
    assert not is_B_separated(EvPeriodicWord(0, (), (2,)), P1)
    assert is_B_separated(EvPeriodicWord(0, (), (2, 1)), P1)
    assert not is_B_separated(EvPeriodicWord(0, (1, 2), (3, 0)), P1)


def test_ind_examples():
    assert ind(PLUS, (2, 1), P1) == 1
    assert ind(PLUS, (0, 1), P1) == 2
    assert ind(PLUS, ((), (0, 3)), P1) == IND_INF
    assert ind(MINUS, (0,), P1) == 1
    assert ind(MINUS, ((), (3, 0)), P1) == IND_INF
    assert ind(MINUS, (3, 0, 3, 3), P1) == 4
    # finite tail continued by zeros: 0 is small, breaking MINUS at odd pos
    assert ind(MINUS, (3, 0, 3, 0), P1) == 5


def test_ind_prefix_determined():
    rng = random.Random(1)
    for _ in range(300):
        tail = tuple(rng.randint(0, 3) for _ in range(8))
        v = ind(PLUS, tail, P1)
        if v is not IND_INF and v <= len(tail):
            # changing digits past v does not move the index
            mutated = tail[: int(v)] + tuple(rng.randint(0, 3) for _ in range(4))
            assert ind(PLUS, mutated, P1) == v


def test_word_tail():
    w = DigitWord(0, (3, 0, 1))
    assert word_tail(w, 2) == (0, 1)
    p = EvPeriodicWord(0, (1, 2), (3, 0))
    assert word_tail(p, 2) == ((2,), (3, 0))
    assert word_tail(p, 4) == ((), (0, 3))


def test_shift_consistency():
    rng = random.Random(7)
    beta = P1.beta
    for _ in range(200):
        digits = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 7)))
        whole = word_value(DigitWord(0, digits), P1)
        rest = word_value(DigitWord(0, digits[1:]), P1)
        assert (whole * beta - (rest + digits[0])).is_zero()


def test_valid_word_value_in_interval():
    rng = random.Random(3)
    bound = P1.interval_bound
    for _ in range(200):
        digits = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 7)))
        v = word_value(DigitWord(0, digits), P1)
        assert v.sign() >= 0 and v <= bound
    for _ in range(100):
        pre = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 3)))
        per = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3)))
        v = word_value(EvPeriodicWord(0, pre, per), P1)
        assert v.sign() >= 0 and v <= bound


def test_raw_range_flag():
    assert DigitWord(0, (-1, 5)).is_raw_in_range(P1)
    assert not DigitWord(0, (-2,)).is_raw_in_range(P1)
    assert not DigitWord(0, (6,)).is_raw_in_range(P1)
    assert not DigitWord(0, (5,)).is_valid(P1)
