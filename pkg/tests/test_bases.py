from fractions import Fraction

import pytest

from polyzeta.bases import (
    assemble_group_like,
    check_duality,
    coordinates_of,
    eulerian_pi1,
    mrs_check,
    pbw_basis,
    phi_pi1,
    radford_triangular,
    sigma_fast,
)
from polyzeta.bridge import build_Zsh
from polyzeta.ncalg import (
    NCPolynomial,
    coproduct,
    coproduct_image,
    exp_conc,
    is_primitive,
    pairing,
    zX,
)
from polyzeta.words import X, Y, lyndon_words

H = Fraction(1, 2)


def P(alpha, d):
    return NCPolynomial(alpha, {tuple(w): Fraction(c) for w, c in d.items()})


def test_pi1_examples():
    assert eulerian_pi1((1,)) == P(Y, {(1,): 1})
    assert eulerian_pi1((2,)) == P(Y, {(2,): 1, (1, 1): -H})
    assert eulerian_pi1((3,)) == P(
        Y, {(3,): 1, (1, 2): -H, (2, 1): -H, (1, 1, 1): Fraction(1, 3)}
    )


def test_pi1_primitive():
    for n in range(1, 6):
        for w in Y.words(n):
            assert is_primitive(eulerian_pi1(w), "stuffle")
    # pi1 kills products: y1 y1 = (y1 qsh y1 - y2) / 2
    assert not eulerian_pi1((1, 1)).terms


def test_pbw_examples():
    px = pbw_basis("shuffle-X", 4)
    assert px.lower[(0, 1)] == P(X, {(0, 1): 1, (1, 0): -1})
    assert px.upper[(0, 1)] == P(X, {(0, 1): 1})
    assert px.upper[(1, 0)] == P(X, {(0, 1): 1, (1, 0): 1})
    py = pbw_basis("stuffle-Y", 4)
    assert py.upper[(2,)] == P(Y, {(2,): 1})
    assert py.upper[(2, 1)] == P(Y, {(2, 1): 1, (3,): H})


@pytest.mark.parametrize("kind", ["shuffle-X", "shuffle-Y", "stuffle-Y"])
def test_duality_grade6(kind):
    rep = check_duality(pbw_basis(kind, 6))
    assert rep["ok"], rep["failures"][:3]


def test_duality_examples():
    px = pbw_basis("shuffle-X", 4)
    assert pairing(px.upper[(0, 1)], px.lower[(1, 0)]) == 0
    py = pbw_basis("stuffle-Y", 4)
    assert pairing(py.upper[(2,)], py.lower[(2,)]) == 1


@pytest.mark.parametrize("kind,which", [("shuffle-X", "shuffle"), ("shuffle-Y", "shuffle"),
                                        ("stuffle-Y", "stuffle")])
def test_lower_lyndon_primitive(kind, which):
    pair = pbw_basis(kind, 6)
    for l in lyndon_words(pair.alpha, 6):
        assert is_primitive(pair.lower[l], which)


@pytest.mark.parametrize("kind", ["shuffle-X", "stuffle-Y"])
@pytest.mark.parametrize("N", [1, 4, 5])
def test_mrs(kind, N):
    assert mrs_check(kind, N)


def test_sigma_fast_agrees_with_duality():
    py = pbw_basis("stuffle-Y", 7, method="solve")
    for w, S in py.upper.items():
        assert sigma_fast(w) == S


def test_radford_triangular():
    for w in X.words_upto(6):
        if w:
            assert radford_triangular(w, "X")
    for w in Y.words_upto(6):
        if w:
            assert radford_triangular(w, "Y")


def test_phi_examples():
    assert phi_pi1(P(Y, {(1,): 1})) == P(Y, {(1,): 1})
    assert phi_pi1(P(Y, {(2,): 1})) == P(Y, {(2,): 1, (1, 1): -H})
    assert phi_pi1(P(Y, {(1, 1): 1})) == P(Y, {(1, 1): 1})


def _phi_tensor(img):
    out = {}
    for (u, v), c in img.items():
        a, b = phi_pi1(P(Y, {u: 1})), phi_pi1(P(Y, {v: 1}))
        for wu, cu in a.terms.items():
            for wv, cv in b.terms.items():
                out[(wu, wv)] = out.get((wu, wv), 0) + c * cu * cv
    return {k: v for k, v in out.items() if v}


def test_phi_intertwines_coproducts_weight5():
    for n in range(1, 6):
        for w in Y.words(n):
            lhs = _phi_tensor(coproduct_image(w, "shuffle"))
            rhs = {k: v for k, v in coproduct(phi_pi1(P(Y, {w: 1})), "stuffle").items() if v}
            assert lhs == rhs, w


def test_coordinates_single_factor():
    px = pbw_basis("shuffle-X", 4)
    S = exp_conc(px.lower[(0, 1)].scale(Fraction(3)).truncate(4), 4)
    coords = coordinates_of(S, px)
    assert coords[(0, 1)] == 3
    assert all(c == 0 for l, c in coords.items() if l != (0, 1))
    one = NCPolynomial.one(X, 4)
    assert all(c == 0 for c in coordinates_of(one, px).values())
    assert assemble_group_like({}, px, 4) == one


def test_assemble_single_exponential():
    px = pbw_basis("shuffle-X", 4)
    S = assemble_group_like({(0, 1): 1}, px, 4)
    assert S == exp_conc(px.lower[(0, 1)].truncate(4), 4)


def test_zsh_round_trip():
    Z = build_Zsh(4)
    px = pbw_basis("shuffle-X", 4)
    coords = coordinates_of(Z, px)
    assert coords[(0, 1)] == zX((0, 1)) and coords[(0, 0, 1)] == zX((0, 0, 1))
    assert coords[(0,)] == 0 and coords[(1,)] == 0
    assert assemble_group_like(coords, px, 4) == Z
