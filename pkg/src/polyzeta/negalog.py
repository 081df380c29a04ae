"""Polylogarithms and harmonic sums at negative multi-indices.

A word ``y_{s1}...y_{sr}`` over Y0 stands for the index (-s1, ..., -sr).
``Li^-_w(z)`` is a polynomial ``p(u)`` in ``u = 1/(1-z)`` with integer
coefficients, and ``H^-_w(n) = sum_k p_k binom(n+k, k)``.

Coefficient lists are plain python lists indexed by degree.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, List, Sequence, Tuple

Word = Tuple[int, ...]


def as_word(w) -> Word:
    """Accept ``"2 1"``, ``[2, 1]`` or ``(2, 1)``."""
    if isinstance(w, str):
        w = [int(t) for t in w.replace(",", " ").split()]
    w = tuple(int(s) for s in w)
    if any(s < 0 for s in w):
        raise ValueError("negative-index words use indices >= 0")
    return w


def weight(w: Sequence[int]) -> int:
    return sum(w)


def degree(w: Sequence[int]) -> int:
    """(w) + |w|, the degree of Li^-_w in u."""
    return sum(w) + len(w)


def _trim(p: List) -> List:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


# ---------------------------------------------------------------------------
# Li^- as polynomials in u

def _mul_u_minus_1(p: List[int]) -> List[int]:
    # (u - 1) p : q_k = p_{k-1} - p_k
    q = [0] * (len(p) + 1)
    for k in range(len(q)):
        q[k] = (p[k - 1] if k >= 1 else 0) - (p[k] if k < len(p) else 0)
    return q


def _theta(p: List[int]) -> List[int]:
    # z d/dz = (u^2 - u) d/du : q_k = (k-1) p_{k-1} - k p_k
    q = [0] * (len(p) + 1)
    for k in range(len(q)):
        q[k] = ((k - 1) * p[k - 1] if k >= 1 else 0) - (k * p[k] if k < len(p) else 0)
    return q


def _literal_y0(p: List[int]) -> List[int]:
    # the i = 0 rule exactly as printed, product in the middle band
    d = len(p) - 1
    q = [0] * (d + 2)
    q[0] = -p[0]
    for k in range(1, d + 1):
        q[k] = p[k - 1] * p[k]
    q[d + 1] = p[d]
    return q


@lru_cache(maxsize=None)
def _lineg(w: Word, literal: bool) -> Tuple[int, ...]:
    if not w:
        return (1,)
    p = list(_lineg(w[1:], literal))
    p = _literal_y0(p) if literal else _mul_u_minus_1(p)
    for _ in range(w[0]):
        p = _theta(p)
    return tuple(p)


def lineg_coeffs(w, literal: bool = False) -> List[int]:
    """Coefficients p_0..p_d of Li^-_w(z) = sum p_k u^k.

    ``literal=True`` runs the two-case recursion with its middle band of the
    y0 case read as a product of neighbours, as it is printed in the source
    material; it disagrees with the nested-sum oracle from depth 2 on and is
    kept only so :func:`recursion_conflicts` can report where.
    """
    w = as_word(w)
    if not w:
        raise ValueError("empty word")
    return list(_lineg(w, literal))


def lineg_by_sum(w, nmax: int) -> List[int]:
    """Taylor coefficients of Li^-_w(z), z^0..z^nmax, by nested summation."""
    w = as_word(w)
    return [0] + [n ** w[0] * hneg_value(w[1:], n - 1) for n in range(1, nmax + 1)]


def u_poly_taylor(p: Sequence[int], nmax: int) -> List[Fraction]:
    """z-expansion of sum p_k (1-z)^{-k} up to z^nmax."""
    out = [Fraction(0)] * (nmax + 1)
    for k, c in enumerate(p):
        if not c:
            continue
        for n in range(nmax + 1):
            out[n] += c * comb(n + k - 1, n) if k else (c if n == 0 else 0)
    return out


def recursion_conflicts(max_degree: int = 6) -> List[dict]:
    """Words where the printed recursion and the nested-sum oracle differ."""
    out = []
    for w in neg_words(max_degree):
        lit = lineg_coeffs(w, literal=True)
        ok = lineg_coeffs(w)
        if _trim(lit) != _trim(ok):
            out.append({"word": list(w), "printed": lit, "oracle": ok})
    return out


def neg_words(max_degree: int, positive: bool = False) -> List[Word]:
    """All nonempty words over Y0 (or Y if ``positive``) with (w)+|w| <= bound."""
    out: List[Word] = []
    lo = 1 if positive else 0

    def rec(prefix, budget):
        for s in range(lo, budget):
            w = prefix + (s,)
            out.append(w)
            rec(w, budget - s - 1)

    rec((), max_degree + 1)
    return sorted(out, key=lambda w: (degree(w), w))


# ---------------------------------------------------------------------------
# harmonic sums

def hneg_value(w, n: int) -> int:
    """H^-_w(n) = sum_{n >= n1 > ... > nr > 0} n1^s1 ... nr^sr."""
    w = as_word(w)
    if not w:
        return 1
    acc = [1] * (n + 1)  # cumulative table of the empty word
    for s in reversed(w):
        new = [0] * (n + 1)
        for m in range(1, n + 1):
            new[m] = new[m - 1] + m ** s * acc[m - 1]
        acc = new
    return acc[n]


def hneg_poly(w) -> List[int]:
    """Coefficients of H^-_w on the binomial family binom(n+k, k)."""
    return lineg_coeffs(w)


def hneg_from_poly(p: Sequence, n: int) -> Fraction:
    return sum((Fraction(c) * comb(n + k, k) for k, c in enumerate(p)), Fraction(0))


# ---------------------------------------------------------------------------
# leading coefficients

def c_minus(w) -> Fraction:
    w = as_word(w)
    if not w:
        raise ValueError("empty word")
    out = Fraction(1)
    for i in range(len(w)):
        out /= degree(w[i:])
    return out


def b_minus(w) -> int:
    w = as_word(w)
    v = factorial(degree(w)) * c_minus(w)
    assert v.denominator == 1
    return int(v)


def transforms(p: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    """(p_hat, p_check) with p_hat_k = p_k/k! and p_check_k = k! p_k."""
    hat = [Fraction(c) / factorial(k) for k, c in enumerate(p)]
    check = [Fraction(c) * factorial(k) for k, c in enumerate(p)]
    return hat, check


def from_hat(hat: Sequence) -> List[Fraction]:
    return [Fraction(c) * factorial(k) for k, c in enumerate(hat)]


def from_check(check: Sequence) -> List[Fraction]:
    return [Fraction(c) / factorial(k) for k, c in enumerate(check)]


def zeta_sh_neg(w) -> int:
    """p(1) for p = Li^-_w."""
    return sum(lineg_coeffs(w))


def gamma_neg(w) -> Fraction:
    """p_hat(1) for p = Li^-_w."""
    return sum(transforms(lineg_coeffs(w))[0], Fraction(0))


# ---------------------------------------------------------------------------
# Stirling numbers

@lru_cache(maxsize=None)
def stirling2(k: int, j: int) -> int:
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * stirling2(k - 1, j) + stirling2(k - 1, j - 1)


@lru_cache(maxsize=None)
def stirling1(k: int, j: int) -> int:
    """Signed: (x)_k = x(x-1)...(x-k+1) = sum_j S1(k, j) x^j."""
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return stirling1(k - 1, j - 1) - (k - 1) * stirling1(k - 1, j)


def stirling1_unsigned(k: int, j: int) -> int:
    return abs(stirling1(k, j))


def stirling(kind: str, k: int, j: int) -> int:
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    if kind in ("first", "1", 1):
        return stirling1(k, j)
    if kind in ("second", "2", 2):
        return stirling2(k, j)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# star basis: index k stands for (k x1)*, and (x1*)^{sh j} = (j x1)*, so a
# star-basis vector is the u-polynomial of its Li image.

def star_mul(a: Sequence, b: Sequence) -> List:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def star_add(a: Sequence, b: Sequence, s=1) -> List:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + s * (b[i] if i < len(b) else 0) for i in range(n)]


def _star_pow(p: Sequence, n: int) -> List:
    out = [1]
    for _ in range(n):
        out = star_mul(out, p)
    return out


def r_prime_letter(k: int) -> List[int]:
    """R'_{y_k} = sum_i i! S2(k, i) (x1* - 1)^{sh i}."""
    out = [0]
    for i in range(k + 1):
        c = factorial(i) * stirling2(k, i)
        if c:
            out = star_add(out, [c * x for x in _star_pow([-1, 1], i)])
    return _trim(out)


def r_letter(k: int) -> List[int]:
    if k == 0:
        return [-1, 1]
    return _trim(star_mul([0, 1], r_prime_letter(k)))


def rho(k: int) -> List[Fraction]:
    """Star-basis image of the letter y_k in the explicit product formula."""
    if k == 0:
        return [Fraction(-1), Fraction(1)]
    out = [Fraction(0)] * (k + 2)
    for j in range(1, k + 1):
        c = stirling2(k, j) * factorial(j) ** 2
        for l in range(j + 1):
            out[j - l + 1] += Fraction(c * (-1) ** l, factorial(l) * factorial(j - l))
    return _trim(out)


def r_word(w) -> List[int]:
    """Star-basis coefficients of R_w; index k is (k x1)*.

    Letters use the Stirling closed form; longer words reuse the u-polynomial
    since Li maps (k x1)* to (1-z)^{-k}.
    """
    w = as_word(w)
    if len(w) == 1:
        return r_letter(w[0])
    return lineg_coeffs(w)


def letter_identity(k: int) -> dict:
    """Check (k x1)* = 1 + R_{y0} + sum_{j=2}^k S1(k,j)/(k-1)! R_{y_{j+1}}.

    Reported, never asserted: the index pattern does not balance degrees.
    """
    lhs = [0] * k + [1]
    rhs = star_add([1], r_letter(0))
    for j in range(2, k + 1):
        c = Fraction(stirling1(k, j), factorial(k - 1))
        rhs = star_add(rhs, [c * x for x in r_letter(j + 1)])
    return {"k": k, "holds": _trim(lhs) == _trim(rhs), "lhs": lhs, "rhs": _trim(rhs)}


def _stuffle(u: Word, v: Word) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = {}
    for w, c in _stuffle(u[1:], v).items():
        out[(u[0],) + w] = out.get((u[0],) + w, 0) + c
    for w, c in _stuffle(u, v[1:]).items():
        out[(v[0],) + w] = out.get((v[0],) + w, 0) + c
    for w, c in _stuffle(u[1:], v[1:]).items():
        k = (u[0] + v[0],) + w
        out[k] = out.get(k, 0) + c
    return out


def hadamard_square_index(k: int, l: int) -> List[int]:
    """S = x1* sh R'_{y_k stuffle y_l} in the star basis.

    R'_w is R_w with one x1* factor removed, i.e. p_w(u)/u; this is legal for
    positive-index words (valuation 1).  Expanding the quasi-shuffle,
    y_k stuffle y_l = y_k sh y_l + y_{k+l}, which gives the second form
    (1 + R_{y0}) sh (R'_{y_{k+l}} + R'_{y_k sh y_l}).
    """
    if k < 1 or l < 1:
        raise ValueError("need k, l >= 1")
    out = [0]
    for w, c in sorted(_stuffle((k,), (l,)).items()):
        out = star_add(out, [c * x for x in lineg_coeffs(w)])
    return _trim(out)


def hadamard_check(k: int, l: int, nmax: int = 10) -> bool:
    """Li_S / (1-z) has z^n coefficient H^-_{y_k}(n) H^-_{y_l}(n)."""
    S = hadamard_square_index(k, l)
    ser = u_poly_taylor(star_mul(S, [0, 1]), nmax)
    return all(ser[n] == hneg_value((k,), n) * hneg_value((l,), n) for n in range(nmax + 1))


def product_poly(k: int, l: int) -> List[int]:
    """u-polynomial of the pointwise product Li^-_{y_k} Li^-_{y_l}."""
    return star_mul(lineg_coeffs((k,)), lineg_coeffs((l,)))


def all_positive_words(max_weight: int) -> Iterable[Word]:
    for w in neg_words(2 * max_weight, positive=True):
        if weight(w) <= max_weight:
            yield w


def harmonic_stuffle_check(u: Word, v: Word, n: int) -> bool:
    """H_{u stuffle v}(n) = H_u(n) H_v(n) for positive-index harmonic sums."""
    from .numeric import harmonic

    lhs = sum((c * harmonic(w, n) for w, c in _stuffle(tuple(u), tuple(v)).items()), Fraction(0))
    return lhs == harmonic(u, n) * harmonic(v, n)


def render_upoly(p: Sequence, var: str = "u") -> str:
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}{mono}"
        else:
            body = str(a)
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


def r_word_explicit(w) -> List[Fraction]:
    """R_w from the binomial sum over rho_{k1} sh ... sh rho_{kr}."""
    w = as_word(w)
    out: List = [Fraction(0)]

    def rec(i, avail, coeff, acc):
        nonlocal out
        if i == len(w):
            out = star_add(out, [coeff * x for x in acc])
            return
        top = avail + w[i]
        for k in range(top + 1):
            rec(i + 1, top - k, coeff * comb(top, k), star_mul(acc, rho(k)))

    rec(0, 0, 1, [Fraction(1)])
    return _trim(out)


def explicit_formula_conflicts(max_degree: int = 5) -> List[dict]:
    """Words where :func:`r_word_explicit` differs from Li^- (reported only)."""
    out = []
    for w in neg_words(max_degree):
        a, b = r_word_explicit(w), lineg_coeffs(w)
        if a != b:
            out.append({"word": list(w), "formula": a, "oracle": b})
    return out
