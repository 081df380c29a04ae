from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from polyzeta.ncalg import (
    GAMMA,
    NCPolynomial,
    SymPoly,
    conc,
    coproduct_image,
    exp_conc,
    is_group_like,
    log_conc,
    pairing,
    shuffle,
    shuffle_words,
    stuffle,
    stuffle_words,
    zY,
)
from polyzeta.numeric import harmonic
from polyzeta.words import X, Y

x_words = st.lists(st.integers(0, 1), max_size=4).map(tuple)
y_words = st.lists(st.integers(1, 3), max_size=3).map(tuple)


def P(alpha, d, bound=None):
    return NCPolynomial(alpha, {tuple(w): Fraction(c) for w, c in d.items()}, bound)


def brute_shuffle(u, v):
    out = {}
    n = len(u) + len(v)
    for pos in combinations(range(n), len(u)):
        w, iu, iv = [], iter(u), iter(v)
        for i in range(n):
            w.append(next(iu) if i in pos else next(iv))
        out[tuple(w)] = out.get(tuple(w), 0) + 1
    return out


def test_conc_examples():
    assert conc(P(X, {(0,): 1}), P(X, {(1,): 1})).terms == {(0, 1): 1}
    assert conc(P(X, {(0,): 1, (1,): 1}), P(X, {(1,): 1})).terms == {(0, 1): 1, (1, 1): 1}
    p = P(X, {(0, 1): 3, (1,): -1})
    assert conc(NCPolynomial.one(X), p) == p


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        conc(P(X, {(0,): 1}), P(Y, {(1,): 1}))
    with pytest.raises(ValueError):
        stuffle(P(X, {(0,): 1}), P(X, {(1,): 1}))


def test_shuffle_examples():
    assert shuffle_words((0,), (1,)) == {(0, 1): 1, (1, 0): 1}
    assert shuffle_words((0, 1), (0,)) == {(0, 0, 1): 2, (0, 1, 0): 1}
    assert shuffle_words((0, 1, 1), ()) == {(0, 1, 1): 1}


def test_stuffle_examples():
    assert stuffle_words((1,), (1,)) == {(1, 1): 2, (2,): 1}
    assert stuffle_words((2,), (3,)) == {(2, 3): 1, (3, 2): 1, (5,): 1}
    assert stuffle_words((), (2, 1)) == {(2, 1): 1}


@given(x_words, x_words)
def test_shuffle_matches_interleavings(u, v):
    assert shuffle_words(u, v) == brute_shuffle(u, v)


@given(x_words, x_words, x_words)
def test_shuffle_comm_assoc(u, v, w):
    pu, pv, pw = (NCPolynomial.word(X, a) for a in (u, v, w))
    assert shuffle(pu, pv) == shuffle(pv, pu)
    assert shuffle(shuffle(pu, pv), pw) == shuffle(pu, shuffle(pv, pw))


@given(y_words, y_words, y_words)
def test_stuffle_comm_assoc(u, v, w):
    pu, pv, pw = (NCPolynomial.word(Y, a) for a in (u, v, w))
    assert stuffle(pu, pv) == stuffle(pv, pu)
    assert stuffle(stuffle(pu, pv), pw) == stuffle(pu, stuffle(pv, pw))


@given(y_words, y_words)
def test_stuffle_is_harmonic_character(u, v):
    # independent oracle: H_{u qsh v}(n) = H_u(n) H_v(n)
    for n in (1, 4, 7):
        lhs = sum(c * harmonic(w, n) for w, c in stuffle_words(u, v).items())
        assert lhs == harmonic(u, n) * harmonic(v, n)


def _dual_check(which, prod, words):
    for w in words:
        img = coproduct_image(w, which)
        for u in words:
            for v in words:
                assert img.get((u, v), 0) == prod(u, v).get(w, 0)


def test_shuffle_duality():
    words = list(X.words_upto(4))
    _dual_check("shuffle", shuffle_words, words)


def test_stuffle_duality():
    words = list(Y.words_upto(5))
    _dual_check("stuffle", stuffle_words, words)


def test_coproduct_examples():
    assert coproduct_image((0, 1), "conc") == {((), (0, 1)): 1, ((0,), (1,)): 1, ((0, 1), ()): 1}
    assert coproduct_image((2,), "stuffle") == {((2,), ()): 1, ((), (2,)): 1, ((1,), (1,)): 1}
    assert coproduct_image((0,), "shuffle") == {((0,), ()): 1, ((), (0,)): 1}


def test_pairing():
    ident = NCPolynomial(X, {w: 1 for w in X.words_upto(2)}, 2)
    assert pairing(ident, NCPolynomial.word(X, (0, 1))) == 1
    p = P(X, {(0,): 1, (1,): 2})
    assert pairing(p, p) == 5
    e = exp_conc(P(X, {(0,): 1}), 2)
    assert pairing(e, NCPolynomial.word(X, (0, 0))) == Fraction(1, 2)
    with pytest.raises(ValueError):
        pairing(e, NCPolynomial.word(X, (0, 0, 0)))


def test_exp_log_examples():
    assert exp_conc(P(X, {(0,): 1}), 2).terms == {(): 1, (0,): 1, (0, 0): Fraction(1, 2)}
    s = P(X, {(0,): 1, (1,): 1})
    assert log_conc(exp_conc(s, 4), 4) == s.truncate(4)
    e = exp_conc(P(Y, {(1,): 1}), 3)
    assert e.terms == {(): 1, (1,): 1, (1, 1): Fraction(1, 2), (1, 1, 1): Fraction(1, 6)}
    with pytest.raises(ValueError):
        exp_conc(P(X, {(): 1}), 2)
    with pytest.raises(ValueError):
        log_conc(P(X, {(0,): 1}), 2)


lie_coeffs = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@given(lie_coeffs)
def test_exp_log_inverse_on_lie_elements(cs):
    a, b, c = cs
    # a x0 + b x1 + c [x0, x1]
    L = P(X, {(0,): a, (1,): b, (0, 1): c, (1, 0): -c})
    E = exp_conc(L, 6)
    assert log_conc(E, 6) == L.truncate(6)
    assert is_group_like(E, "shuffle", 6)


def test_group_like_criterion():
    g = SymPoly.sym(GAMMA)
    z2 = SymPoly.sym(zY((2,)))
    S = exp_conc(NCPolynomial(Y, {(1,): g, (2,): z2}), 4, product=conc)
    assert is_group_like(S, "shuffle", 4)
    bad = S + NCPolynomial(Y, {(1, 1): 1})
    assert not is_group_like(bad, "shuffle", 4)


def test_sympoly_text():
    p = SymPoly.sym(zY((3,))) * Fraction(3, 2) - SymPoly.sym(zY((2, 1)))
    assert p.render() in ("3/2*zY[3] - zY[2 1]", "-zY[2 1] + 3/2*zY[3]")
    assert p.is_homogeneous()
