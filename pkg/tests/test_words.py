from itertools import product

import pytest
from hypothesis import given, strategies as st

from polyzeta.words import (
    X,
    Y,
    compositions,
    is_lyndon,
    lyndon_factorization,
    lyndon_of_grade,
    lyndon_words,
    pi_X,
    pi_Y,
    standard_factorization,
)


def brute_lyndon(w, alpha):
    k = alpha.key(w)
    return bool(w) and all(k < k[i:] for i in range(1, len(w)))


def brute_factorization(w, alpha):
    # greedy longest Lyndon prefix
    out = []
    while w:
        i = max(j for j in range(1, len(w) + 1) if brute_lyndon(w[:j], alpha))
        out.append(w[:i])
        w = w[i:]
    return out


x_words = st.lists(st.integers(0, 1), max_size=10).map(tuple)
y_words = st.lists(st.integers(1, 4), max_size=6).map(tuple)


def test_lyndon_x3():
    assert lyndon_words(X, 3) == [(0,), (0, 0, 1), (0, 1), (0, 1, 1), (1,)]


def test_lyndon_x1():
    assert lyndon_words(X, 1) == [(0,), (1,)]


def test_lyndon_y3():
    assert set(lyndon_words(Y, 3)) == {(1,), (2,), (3,), (2, 1)}


def test_lyndon_sorted_and_complete():
    for alpha, n in ((X, 8), (Y, 8)):
        got = lyndon_words(alpha, n)
        assert got == sorted(got, key=alpha.key)
        brute = [w for g in range(1, n + 1) for w in alpha.words(g) if brute_lyndon(w, alpha)]
        assert set(got) == set(brute)


def test_necklace_counts():
    counts = [len(lyndon_of_grade(X, n)) for n in range(1, 9)]
    assert counts == [2, 1, 2, 3, 6, 9, 18, 30]


def test_is_lyndon_exhaustive():
    for n in range(1, 9):
        for w in product((0, 1), repeat=n):
            assert is_lyndon(w, X) == brute_lyndon(w, X)
    for n in range(1, 9):
        for w in compositions(n):
            assert is_lyndon(w, Y) == brute_lyndon(w, Y)


@pytest.mark.parametrize(
    "l, expected",
    [((0, 0, 1), ((0,), (0, 1))), ((0, 1, 1), ((0, 1), (1,))), ((2, 1), ((2,), (1,)))],
)
def test_standard_factorization(l, expected):
    alpha = Y if max(l) > 1 else X
    assert standard_factorization(l, alpha) == expected


def test_standard_factorization_rejects():
    with pytest.raises(ValueError):
        standard_factorization((1, 0), X)
    with pytest.raises(ValueError):
        standard_factorization((0,), X)


def test_standard_factorization_factors_lyndon():
    for l in lyndon_words(X, 8):
        if len(l) < 2:
            continue
        a, b = standard_factorization(l, X)
        assert a + b == l and is_lyndon(a, X) and is_lyndon(b, X)
        assert not any(is_lyndon(l[i:], X) for i in range(1, len(a)))


def test_factorization_examples():
    assert lyndon_factorization((1, 0), X) == [((1,), 1), ((0,), 1)]
    assert lyndon_factorization((0, 1, 0, 1), X) == [((0, 1), 2)]
    assert lyndon_factorization((), X) == []


@given(x_words)
def test_factorization_x(w):
    fac = lyndon_factorization(w, X)
    flat = [l for l, m in fac for _ in range(m)]
    assert sum(flat, ()) == w
    assert flat == brute_factorization(w, X)
    keys = [X.key(l) for l, _ in fac]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)


@given(y_words)
def test_factorization_y(w):
    fac = lyndon_factorization(w, Y)
    flat = [l for l, m in fac for _ in range(m)]
    assert sum(flat, ()) == w and all(is_lyndon(l, Y) for l in flat)
    keys = [Y.key(l) for l in flat]
    assert keys == sorted(keys, reverse=True)


def test_codings():
    assert pi_X((2, 1)) == (0, 1, 1)
    assert pi_Y((0, 1, 1)) == (2, 1)
    assert pi_Y((1, 0)) is None


def test_pi_roundtrip_weight10():
    for n in range(11):
        for w in compositions(n):
            assert pi_Y(pi_X(w)) == w
            assert len(pi_X(w)) == n


def test_word_text():
    assert X.parse("001") == (0, 0, 1)
    assert Y.parse("2 1") == (2, 1)
    assert Y.parse("e") == ()
    with pytest.raises(ValueError):
        X.parse("012")
    with pytest.raises(ValueError):
        Y.parse("0 1")
