"""PBW bases and their graded duals, the eulerian projector, MRS factorization.

Three kinds of dual pairs are built:

``shuffle-X``  {P_w} (Lie brackets over x0 < x1) and {S_w} (Radford duals)
``shuffle-Y``  the same construction over Y with y1 > y2 > ... (graded by weight)
``stuffle-Y``  {Pi_w} built from pi1(y_s) and {Sigma_w}, the duals for the
               quasi-shuffle pairing
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Optional

from . import linalg
from .ncalg import (
    EMPTY,
    NCPolynomial,
    conc,
    exp_conc,
    is_group_like,
    shuffle,
    shuffle_words,
    stuffle_words,
)
from .words import (
    X,
    Y,
    Alphabet,
    Word,
    alphabet,
    lyndon_factorization,
    lyndon_words,
    standard_factorization,
)

KINDS = ("shuffle-X", "shuffle-Y", "stuffle-Y")


# ---------------------------------------------------------------------------
# eulerian projector

def eulerian_pi1(w: Word) -> NCPolynomial:
    """pi1(w) = w + sum_{k>=2} (-1)^(k-1)/k sum <w|u1 qsh ... qsh uk> u1...uk."""
    w = tuple(w)
    if not w:
        return NCPolynomial.zero(Y)
    return NCPolynomial(Y, dict(_pi1_terms(w)))


@lru_cache(maxsize=None)
def _pi1_terms(w: Word) -> tuple:
    out: Dict[Word, Fraction] = {}
    # each u_i has weight >= 1, so k never exceeds the weight of w
    for k in range(1, sum(w) + 1):
        coeff = Fraction((-1) ** (k - 1), k)
        for parts, mult in _reduced_iterated_coproduct(w, k).items():
            word = sum(parts, ())
            out[word] = out.get(word, 0) + coeff * mult
    return tuple((u, c) for u, c in out.items() if c)


def _reduced_iterated_coproduct(w: Word, k: int) -> Dict[tuple, int]:
    """Coefficients <w | u1 qsh ... qsh uk> for nonempty u1..uk, as a dict."""
    # Delta^(k) is a conc-morphism; a letter y_j spreads its index over k slots.
    acc: Dict[tuple, int] = {tuple(EMPTY for _ in range(k)): 1}
    for j in w:
        spreads = _spreads(j, k)
        nxt: Dict[tuple, int] = {}
        for slots, c in acc.items():
            for sp in spreads:
                key = tuple(s + ((p,) if p else EMPTY) for s, p in zip(slots, sp))
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return {s: c for s, c in acc.items() if all(s)}


@lru_cache(maxsize=None)
def _spreads(j: int, k: int) -> tuple:
    """Weak compositions of j into k ordered parts."""
    if k == 1:
        return ((j,),)
    out = []
    for first in range(j + 1):
        for rest in _spreads(j - first, k - 1):
            out.append((first,) + rest)
    return tuple(out)


def phi_pi1(p: NCPolynomial) -> NCPolynomial:
    """The conc-morphism y_k -> pi1(y_k)."""
    if p.alpha is not Y:
        raise ValueError("phi_pi1 acts on Y-polynomials")
    out = NCPolynomial.zero(Y, p.bound)
    for w, c in p.terms.items():
        img = NCPolynomial.one(Y)
        for k in w:
            img = conc(img, eulerian_pi1((k,)))
        out = out + img.scale(c)
    return out


@lru_cache(maxsize=None)
def _phi_letter(k: int) -> tuple:
    return tuple(eulerian_pi1((k,)).terms.items())


@lru_cache(maxsize=None)
def phi_inverse_letter(k: int) -> tuple:
    """phi^{-1}(y_k) as ((composition, coeff), ...), solved letter by letter."""
    out: Dict[Word, Fraction] = {(k,): Fraction(1)}
    for c, a in _phi_letter(k):
        if len(c) < 2:
            continue
        # phi^{-1}(y_k) = y_k - sum_{|c|>=2} a_c phi^{-1}(y_c1)...phi^{-1}(y_cr)
        prod: Dict[Word, Fraction] = {EMPTY: Fraction(1)}
        for part in c:
            nxt: Dict[Word, Fraction] = {}
            for u, x in prod.items():
                for v, y in phi_inverse_letter(part):
                    nxt[u + v] = nxt.get(u + v, 0) + x * y
            prod = nxt
        for u, x in prod.items():
            out[u] = out.get(u, 0) - a * x
    return tuple((u, c) for u, c in out.items() if c)


@lru_cache(maxsize=None)
def _phi_inverse_block(block: Word) -> Fraction:
    k = sum(block)
    return dict(phi_inverse_letter(k)).get(block, Fraction(0))


@lru_cache(maxsize=None)
def phi_inverse_adjoint_word(v: Word) -> tuple:
    """Adjoint of phi^{-1} on a word: sum over cuttings of v into blocks."""
    if not v:
        return ((EMPTY, Fraction(1)),)
    out: Dict[Word, Fraction] = {}
    for i in range(1, len(v) + 1):
        b = _phi_inverse_block(v[:i])
        if not b:
            continue
        head = (sum(v[:i]),)
        for w, c in phi_inverse_adjoint_word(v[i:]):
            out[head + w] = out.get(head + w, 0) + b * c
    return tuple((w, c) for w, c in out.items() if c)


@lru_cache(maxsize=None)
def phi_adjoint_word(v: Word) -> tuple:
    """Adjoint of phi = phi_pi1 on a word (blocks weighted by (-1)^(r-1)/r)."""
    if not v:
        return ((EMPTY, Fraction(1)),)
    out: Dict[Word, Fraction] = {}
    for i in range(1, len(v) + 1):
        b = dict(_phi_letter(sum(v[:i]))).get(v[:i])
        if not b:
            continue
        head = (sum(v[:i]),)
        for w, c in phi_adjoint_word(v[i:]):
            out[head + w] = out.get(head + w, 0) + b * c
    return tuple((w, c) for w, c in out.items() if c)


# ---------------------------------------------------------------------------
# PBW bases

def bracket(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return conc(p, q) - conc(q, p)


@dataclass
class DualBasisPair:
    kind: str
    N: int
    lower: Dict[Word, NCPolynomial] = field(repr=False)
    upper: Dict[Word, NCPolynomial] = field(repr=False)

    @property
    def alpha(self) -> Alphabet:
        return X if self.kind == "shuffle-X" else Y

    def words(self, grade: Optional[int] = None) -> list:
        ws = [w for w in self.lower if grade is None or self.alpha.grade(w) == grade]
        return sorted(ws, key=lambda w: (self.alpha.grade(w), self.alpha.key(w)))

    def lyndon(self) -> list:
        return [l for l in lyndon_words(self.alpha, self.N)]

    def P(self, w) -> NCPolynomial:
        return self.lower[tuple(w)]

    def S(self, w) -> NCPolynomial:
        return self.upper[tuple(w)]


def _alpha_of(kind: str) -> Alphabet:
    if kind not in KINDS:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {KINDS}")
    return X if kind == "shuffle-X" else Y


@lru_cache(maxsize=None)
def lower_lyndon(l: Word, kind: str) -> NCPolynomial:
    """P_l (Lie bracketing at the standard factorization) or Pi_l."""
    alpha = _alpha_of(kind)
    if len(l) == 1:
        if kind == "stuffle-Y":
            return eulerian_pi1(l)
        return NCPolynomial.word(alpha, l)
    l1, l2 = standard_factorization(l, alpha)
    return bracket(lower_lyndon(l1, kind), lower_lyndon(l2, kind))


@lru_cache(maxsize=None)
def lower_word(w: Word, kind: str) -> NCPolynomial:
    alpha = _alpha_of(kind)
    out = NCPolynomial.one(alpha)
    for l, i in lyndon_factorization(w, alpha):
        P = lower_lyndon(l, kind)
        for _ in range(i):
            out = conc(out, P)
    return out


@lru_cache(maxsize=None)
def upper_lyndon(l: Word, alpha_name: str) -> NCPolynomial:
    """S_l: S_x = x, S_l = x S_{l'} for l = x l'."""
    alpha = alphabet(alpha_name)
    if len(l) == 1:
        return NCPolynomial.word(alpha, l)
    rest = upper_word(l[1:], alpha_name)
    return NCPolynomial(alpha, {(l[0],) + w: c for w, c in rest.terms.items()})


@lru_cache(maxsize=None)
def upper_word(w: Word, alpha_name: str) -> NCPolynomial:
    """S_w = S_{l1}^{sh i1} sh ... sh S_{lk}^{sh ik} / (i1! ... ik!)."""
    alpha = alphabet(alpha_name)
    fact = lyndon_factorization(w, alpha)
    if len(fact) == 1 and fact[0][1] == 1:
        return upper_lyndon(w, alpha_name)
    out = NCPolynomial.one(alpha)
    denom = 1
    for l, i in fact:
        S = upper_lyndon(l, alpha_name)
        for _ in range(i):
            out = shuffle(out, S)
        denom *= factorial(i)
    return out.scale(Fraction(1, denom))


@lru_cache(maxsize=None)
def sigma_fast(w: Word) -> NCPolynomial:
    """Sigma_w as the adjoint of phi^{-1} applied to the Y-shuffle dual S_w."""
    S = upper_word(tuple(w), "Y")
    out: Dict[Word, Fraction] = {}
    for v, c in S.terms.items():
        for u, d in phi_inverse_adjoint_word(v):
            out[u] = out.get(u, 0) + c * d
    return NCPolynomial(Y, out)


def sigma_by_duality(N: int) -> Dict[Word, NCPolynomial]:
    """Solve <Sigma_u | Pi_v> = delta weight slice by weight slice."""
    out: Dict[Word, NCPolynomial] = {(): NCPolynomial.one(Y)}
    for g in range(1, N + 1):
        words = list(Y.words(g))
        index = {w: i for i, w in enumerate(words)}
        n = len(words)
        # A[v][w] = <Pi_v | w>; Sigma = (A^{-1})^T
        rows = []
        for v in words:
            P = lower_word(v, "stuffle-Y")
            rows.append({index[w]: c for w, c in P.terms.items()})
        inv = linalg.inverse(rows, n)
        for j, u in enumerate(words):
            # column j of A^{-1} is Sigma_u's coefficient vector
            out[u] = NCPolynomial(Y, {words[i]: r[j] for i, r in enumerate(inv) if r.get(j)})
    return out


def pbw_basis(kind: str, N: int, method: str = "auto") -> DualBasisPair:
    """Dual pair of bases for all words of grade <= N.

    For ``stuffle-Y`` the duals Sigma_w come from the graded duality solve
    (``method='solve'``, default for N <= 8) or from the adjoint of phi^{-1}
    (``method='adjoint'``); the two agree and tests check it.
    """
    alpha = _alpha_of(kind)
    lower: Dict[Word, NCPolynomial] = {}
    upper: Dict[Word, NCPolynomial] = {}
    for w in alpha.words_upto(N):
        lower[w] = lower_word(w, kind)
    if kind == "stuffle-Y":
        if method == "auto":
            method = "solve" if N <= 8 else "adjoint"
        if method == "solve":
            upper = sigma_by_duality(N)
        elif method == "adjoint":
            upper = {w: sigma_fast(w) for w in lower}
        else:
            raise ValueError(f"unknown method {method!r}")
    else:
        for w in lower:
            upper[w] = upper_word(w, alpha.name)
    return DualBasisPair(kind, N, lower, upper)


def check_duality(pair: DualBasisPair) -> dict:
    """Every <S_u | P_v> (all u, v of grade <= N) against the Kronecker delta."""
    failures = []
    checked = 0
    alpha = pair.alpha
    by_grade: Dict[int, list] = {}
    for w in pair.lower:
        by_grade.setdefault(alpha.grade(w), []).append(w)
    for u in pair.upper:
        Su = pair.upper[u].terms
        for v in pair.lower:
            checked += 1
            if alpha.grade(u) != alpha.grade(v):
                continue  # homogeneous: pairing vanishes
            Pv = pair.lower[v].terms
            val = sum((c * Pv[w] for w, c in Su.items() if w in Pv), Fraction(0))
            if val != (1 if u == v else 0):
                failures.append((u, v, val))
    return {"ok": not failures, "checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# MRS factorization of the diagonal series

def _pair_mul(a: dict, b: dict, grade, N: int, left) -> dict:
    # left factors multiply with ``left`` (shuffle or stuffle), right ones by conc
    out: dict = {}
    for (u1, v1), c1 in a.items():
        g1 = grade(u1)
        for (u2, v2), c2 in b.items():
            if g1 + grade(u2) > N:
                continue
            c = c1 * c2
            v = v1 + v2
            for u, m in left(u1, u2).items():
                k = (u, v)
                val = out.get(k, 0) + c * m
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
    return out


def _pair_exp(t: dict, grade, N: int, left) -> dict:
    out = {(EMPTY, EMPTY): Fraction(1)}
    term = dict(out)
    k = 1
    while True:
        term = {key: c / k for key, c in _pair_mul(term, t, grade, N, left).items()}
        if not term:
            return out
        for key, c in term.items():
            val = out.get(key, 0) + c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        k += 1


def mrs_check(kind: str, N: int, pair: Optional[DualBasisPair] = None) -> bool:
    """sum_w w (x) w == prod_{l decreasing} exp(S_l (x) P_l) up to grade N.

    The left tensor factor carries the shuffle (resp. quasi-shuffle) product,
    the right one concatenation.
    """
    alpha = _alpha_of(kind)
    left = stuffle_words if kind == "stuffle-Y" else shuffle_words
    pair = pair or pbw_basis(kind, N)
    grade = alpha.grade
    prod = {(EMPTY, EMPTY): Fraction(1)}
    for l in reversed(lyndon_words(alpha, N)):
        t = {}
        for u, a in pair.upper[l].terms.items():
            for v, b in pair.lower[l].terms.items():
                t[(u, v)] = t.get((u, v), 0) + a * b
        prod = _pair_mul(prod, _pair_exp(t, grade, N, left), grade, N, left)
    diag = {(w, w): Fraction(1) for w in alpha.words_upto(N)}
    keys = set(prod) | set(diag)
    return all(prod.get(k, 0) == diag.get(k, 0) for k in keys)


# ---------------------------------------------------------------------------
# group-like series and their coordinates

class GroupLikeSeries(NCPolynomial):
    """Truncated series with constant term 1, meant to be group-like.

    ``coproduct`` names the coproduct (``shuffle`` or ``stuffle``) for which
    :meth:`certify` checks Delta(S) = S (x) S.
    """

    __slots__ = ("coproduct", "certified")

    def __init__(self, alpha, terms=None, bound=None, coproduct: str = "shuffle"):
        super().__init__(alpha, terms, bound)
        self.coproduct = coproduct
        self.certified = False
        if self.constant_term() != 1:
            raise ValueError("a group-like series has constant term 1")

    @classmethod
    def of(cls, S: NCPolynomial, coproduct: str) -> "GroupLikeSeries":
        return cls(S.alpha, S.terms, S.bound, coproduct)

    def certify(self, bound: Optional[int] = None) -> bool:
        self.certified = is_group_like(self, self.coproduct, bound)
        return self.certified


def coordinates_of(S: NCPolynomial, pair: DualBasisPair) -> Dict[Word, object]:
    """Second-kind coordinates <S | S_l> (resp. Sigma_l) for Lyndon l."""
    out = {}
    bound = pair.N if S.bound is None else min(pair.N, S.bound)
    for l in lyndon_words(pair.alpha, bound):
        val = Fraction(0)
        for w, c in pair.upper[l].terms.items():
            d = S.terms.get(w)
            if d:
                val = val + d * c
        out[l] = val
    return out


def assemble_group_like(coords: Dict[Word, object], pair: DualBasisPair, N: int) -> GroupLikeSeries:
    """prod over Lyndon l, decreasing, of exp(c_l P_l), truncated at N."""
    alpha = pair.alpha
    out = NCPolynomial.one(alpha, N)
    for l in reversed(lyndon_words(alpha, N)):
        c = coords.get(l, 0)
        if not c:
            continue
        gen = pair.lower[l].truncate(N).scale(c)
        out = conc(out, exp_conc(gen, N))
    coproduct = "stuffle" if pair.kind == "stuffle-Y" else "shuffle"
    return GroupLikeSeries(alpha, out.terms, N, coproduct)


def radford_triangular(w: Word, alpha_name: str) -> bool:
    """S_w = w + (strictly smaller words) and P_w = w + (strictly larger words).

    The direction matters: S_{x1x0} = x1x0 + x0x1 carries a smaller word.
    """
    alpha = alphabet(alpha_name)
    w = tuple(w)
    S = upper_word(w, alpha_name)
    Pw = lower_word(w, "shuffle-X" if alpha_name == "X" else "shuffle-Y")
    if S[w] != 1 or Pw[w] != 1:
        return False
    k = alpha.key(w)
    return all(alpha.key(u) < k for u in S.terms if u != w) and all(
        alpha.key(u) > k for u in Pw.terms if u != w
    )
