"""Noncommutative polynomials and truncated series over an exact ring.

Coefficients are either :class:`fractions.Fraction` (ints are accepted) or
:class:`SymPoly`, a commutative polynomial over Q in named symbols
(gamma, zY[l], zX[l], t).  Words are tuples (see :mod:`polyzeta.words`).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, Optional, Union

from .words import EMPTY, Alphabet, Word, X, Y, alphabet

Scalar = Union[int, Fraction, "SymPoly"]


# ---------------------------------------------------------------------------
# symbols and the commutative coefficient ring

class Symbol:
    """A named commutative indeterminate with a weight.

    ``family`` is one of ``gamma``, ``Y``, ``X``, ``t`` (``Y``/``X`` carry a
    Lyndon word).  Instances are interned: equal symbols are the same object
    and have a small integer ``id`` used inside monomials.
    """

    __slots__ = ("family", "word", "weight", "id", "_key")
    _registry: Dict[tuple, "Symbol"] = {}
    _by_id: list = []
    _FAMILY_RANK = {"gamma": 0, "Y": 1, "X": 2, "t": 3}

    def __new__(cls, family: str, word: Word = EMPTY):
        k = (family, tuple(word))
        sym = cls._registry.get(k)
        if sym is not None:
            return sym
        if family not in cls._FAMILY_RANK:
            raise ValueError(f"unknown symbol family {family!r}")
        sym = object.__new__(cls)
        sym.family = family
        sym.word = tuple(word)
        if family == "Y":
            sym.weight = sum(word)
            order = Y.key(sym.word)
        elif family == "X":
            sym.weight = len(word)
            order = X.key(sym.word)
        else:
            sym.weight = 1
            order = ()
        sym._key = (cls._FAMILY_RANK[family], sym.weight, order)
        sym.id = len(cls._by_id)
        cls._by_id.append(sym)
        cls._registry[k] = sym
        return sym

    def __reduce__(self):
        return (Symbol, (self.family, self.word))

    @classmethod
    def from_id(cls, i: int) -> "Symbol":
        return cls._by_id[i]

    @property
    def key(self) -> tuple:
        return self._key

    def __repr__(self) -> str:
        return self.name()

    def name(self, style: str = "z") -> str:
        """``z`` style: gamma, zY[2 1], zX[011], t.  ``basis`` style: Sigma[y2 y1], S[x0 x1 x1]."""
        if self.family == "gamma":
            return "gamma"
        if self.family == "t":
            return "t"
        if style == "basis":
            if self.family == "Y":
                return "Sigma[" + " ".join(f"y{k}" for k in self.word) + "]"
            return "S[" + " ".join(f"x{k}" for k in self.word) + "]"
        if style == "latex":
            if self.family == "Y":
                return r"\zeta(\Sigma_{" + _latex_word("y", self.word) + "})"
            return r"\zeta(S_{" + _latex_word("x", self.word) + "})"
        if self.family == "Y":
            return "zY[" + " ".join(str(k) for k in self.word) + "]"
        return "zX[" + "".join(str(k) for k in self.word) + "]"


def _latex_word(letter: str, w: Word) -> str:
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        out.append(f"{letter}_{{{w[i]}}}" + (f"^{{{run}}}" if run > 1 else ""))
        i = j
    return "".join(out)


GAMMA = Symbol("gamma")
T = Symbol("t")


def zY(word) -> Symbol:
    return Symbol("Y", tuple(word))


def zX(word) -> Symbol:
    return Symbol("X", tuple(word))


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class SymPoly:
    """Polynomial over Q in interned :class:`Symbol` s.

    A monomial is a sorted tuple of symbol ids with repetition, so
    ``(3, 3, 7)`` is s3^2 s7.  Terms with zero coefficient are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {} if terms is None else terms

    # constructors
    @classmethod
    def const(cls, c) -> "SymPoly":
        c = _as_fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def sym(cls, s: Symbol) -> "SymPoly":
        return cls({(s.id,): Fraction(1)})

    @staticmethod
    def lift(c) -> "SymPoly":
        if isinstance(c, SymPoly):
            return c
        if isinstance(c, Symbol):
            return SymPoly.sym(c)
        return SymPoly.const(c)

    # arithmetic
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            other = SymPoly.const(other)
        elif not isinstance(other, SymPoly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, SymPoly)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SymPoly()
            return SymPoly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, SymPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SymPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int) -> "SymPoly":
        out = SymPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SymPoly.const(other)
        if isinstance(other, Symbol):
            other = SymPoly.sym(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant())
        return hash(frozenset(self.terms.items()))

    # inspection
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def symbols(self) -> set:
        return {Symbol.from_id(i) for m in self.terms for i in m}

    def monomial_weights(self) -> set:
        return {sum(Symbol.from_id(i).weight for i in m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.monomial_weights()) <= 1

    def has(self, s: Symbol) -> bool:
        return any(s.id in m for m in self.terms)

    def coefficient(self, monomial: Iterable[Symbol]) -> Fraction:
        key = tuple(sorted(s.id for s in monomial))
        return self.terms.get(key, Fraction(0))

    def items(self):
        """(list of (Symbol, power), coefficient) pairs in rendering order."""
        out = []
        for m in self._ordered_monomials():
            out.append((_mono_powers(m), self.terms[m]))
        return out

    def subs(self, mapping: Dict[Symbol, "Scalar"]) -> "SymPoly":
        by_id = {s.id: SymPoly.lift(v) for s, v in mapping.items()}
        out = SymPoly()
        for m, c in self.terms.items():
            term = SymPoly.const(c)
            rest = []
            for i in m:
                if i in by_id:
                    term = term * by_id[i]
                else:
                    rest.append(i)
            if rest:
                term = term * SymPoly({tuple(rest): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Callable[[Symbol], float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            v = float(c)
            for i in m:
                v *= values(Symbol.from_id(i))
            total += v
        return total

    # rendering
    def _ordered_monomials(self) -> list:
        def key(m):
            syms = [Symbol.from_id(i).key for i in m]
            return (-len(m), sorted(syms, reverse=True))
        return sorted(self.terms, key=key)

    def render(self, style: str = "z", mul: str = "*") -> str:
        return render_terms(self.items(), style=style, mul=mul)

    def __repr__(self) -> str:
        return self.render()

    __str__ = __repr__


def _mono_powers(m: tuple) -> list:
    out: list = []
    for i in m:
        s = Symbol.from_id(i)
        if out and out[-1][0] is s:
            out[-1] = (s, out[-1][1] + 1)
        else:
            out.append((s, 1))
    # higher-weight factors first, like the printed tables
    out.sort(key=lambda sp: sp[0].key, reverse=True)
    return out


def format_fraction(c: Fraction) -> str:
    c = _as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_terms(items, style: str = "z", mul: str = "*") -> str:
    """Render ``[(powers, coeff)]``; ``mul`` joins coefficient and factors."""
    if not items:
        return "0"
    parts = []
    for powers, c in items:
        factors = [
            s.name(style) + (f"^{p}" if p > 1 else "") for s, p in powers
        ]
        body = mul.join(factors)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not factors:
            txt = format_fraction(a)
        elif a == 1:
            txt = body
        else:
            txt = format_fraction(a) + mul + body
        parts.append((sign, txt))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, txt in parts[1:]:
        out += f" {sign} {txt}"
    return out


def coeff_is_zero(c) -> bool:
    return not c


def coeff_str(c) -> str:
    if isinstance(c, SymPoly):
        return c.render()
    return format_fraction(c)


# ---------------------------------------------------------------------------
# word products (integer multiplicities, memoized)

@lru_cache(maxsize=200_000)
def shuffle_words(u: Word, v: Word) -> Dict[Word, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Dict[Word, int] = {}
    a, b = u[0], v[0]
    for w, c in shuffle_words(u[1:], v).items():
        k = (a,) + w
        out[k] = out.get(k, 0) + c
    for w, c in shuffle_words(u, v[1:]).items():
        k = (b,) + w
        out[k] = out.get(k, 0) + c
    return out


@lru_cache(maxsize=200_000)
def stuffle_words(u: Word, v: Word) -> Dict[Word, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Dict[Word, int] = {}
    a, b = u[0], v[0]
    for w, c in stuffle_words(u[1:], v).items():
        k = (a,) + w
        out[k] = out.get(k, 0) + c
    for w, c in stuffle_words(u, v[1:]).items():
        k = (b,) + w
        out[k] = out.get(k, 0) + c
    for w, c in stuffle_words(u[1:], v[1:]).items():
        k = (a + b,) + w
        out[k] = out.get(k, 0) + c
    return out


# ---------------------------------------------------------------------------
# polynomials and truncated series

class NCPolynomial:
    """Finite map word -> coefficient over one alphabet.

    ``bound`` (grade) turns the polynomial into a truncated series: every
    product discards words of grade above it.
    """

    __slots__ = ("alpha", "terms", "bound")

    def __init__(self, alpha, terms=None, bound: Optional[int] = None):
        self.alpha: Alphabet = alphabet(alpha)
        self.bound = bound
        clean: dict = {}
        if terms:
            for w, c in dict(terms).items():
                w = tuple(w)
                if c and (bound is None or self.alpha.grade(w) <= bound):
                    clean[w] = c
        self.terms = clean

    # constructors
    @classmethod
    def word(cls, alpha, w: Word, coeff=1, bound=None) -> "NCPolynomial":
        return cls(alpha, {tuple(w): _norm(coeff)}, bound)

    @classmethod
    def one(cls, alpha, bound=None) -> "NCPolynomial":
        return cls(alpha, {EMPTY: Fraction(1)}, bound)

    @classmethod
    def zero(cls, alpha, bound=None) -> "NCPolynomial":
        return cls(alpha, {}, bound)

    def _new(self, terms, bound="same") -> "NCPolynomial":
        out = NCPolynomial.__new__(NCPolynomial)
        out.alpha = self.alpha
        out.bound = self.bound if bound == "same" else bound
        out.terms = terms
        return out

    def truncate(self, bound: Optional[int]) -> "NCPolynomial":
        return NCPolynomial(self.alpha, self.terms, bound)

    # access
    def __getitem__(self, w) -> Scalar:
        return self.terms.get(tuple(w), Fraction(0))

    def coefficient(self, w) -> Scalar:
        return self[w]

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> list:
        return sorted(self.terms, key=self.alpha.key)

    def degree(self) -> int:
        return max((self.alpha.grade(w) for w in self.terms), default=-1)

    def homogeneous_part(self, grade: int) -> "NCPolynomial":
        return self._new({w: c for w, c in self.terms.items() if self.alpha.grade(w) == grade})

    def constant_term(self) -> Scalar:
        return self.terms.get(EMPTY, Fraction(0))

    # linear structure
    def _check(self, other: "NCPolynomial") -> Optional[int]:
        if not isinstance(other, NCPolynomial):
            raise TypeError("expected NCPolynomial")
        if other.alpha is not self.alpha:
            raise ValueError(f"alphabet mismatch: {self.alpha} vs {other.alpha}")
        if self.bound is None:
            return other.bound
        if other.bound is None:
            return self.bound
        return min(self.bound, other.bound)

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        bound = self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPolynomial(self.alpha, out, bound)

    def __neg__(self) -> "NCPolynomial":
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def scale(self, c) -> "NCPolynomial":
        c = _norm(c)
        if not c:
            return self._new({})
        return self._new({w: v * c for w, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return conc(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.alpha is other.alpha and self.terms == other.terms

    def __hash__(self):
        return hash((self.alpha.name, frozenset(self.terms)))

    def map_coefficients(self, f) -> "NCPolynomial":
        return NCPolynomial(self.alpha, {w: f(c) for w, c in self.terms.items()}, self.bound)

    # rendering
    def render(self, sep: str = ".", style: str = "plain") -> str:
        """``y2.y1 + 1/2 y3`` style (coefficient, space, word)."""
        if not self.terms:
            return "0"
        out = []
        for w in sorted(self.terms, key=lambda w: (self.alpha.grade(w), len(w), self.alpha.key(w))):
            c = self.terms[w]
            word = self.alpha.pretty(w, sep)
            if isinstance(c, SymPoly) and not c.is_constant():
                out.append(("+", f"({c.render()}) {word}" if w else f"({c.render()})"))
                continue
            if isinstance(c, SymPoly):
                c = c.constant()
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not w:
                out.append((sign, format_fraction(a)))
            elif a == 1:
                out.append((sign, word))
            else:
                out.append((sign, f"{format_fraction(a)} {word}"))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, t in out[1:]:
            text += f" {sign} {t}"
        return text

    def __repr__(self) -> str:
        tail = f" + O(grade {self.bound + 1})" if self.bound is not None else ""
        return self.render() + tail


class TruncatedSeries(NCPolynomial):
    """An :class:`NCPolynomial` whose bound is mandatory."""

    __slots__ = ()

    def __new__(cls, alpha, terms=None, bound: int = 0):
        return NCPolynomial(alpha, terms, bound)


def _norm(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Symbol):
        return SymPoly.sym(c)
    return c


def _bilinear(p: NCPolynomial, q: NCPolynomial, word_product) -> NCPolynomial:
    bound = p._check(q)
    grade = p.alpha.grade
    out: dict = {}
    for u, a in p.terms.items():
        gu = grade(u)
        if bound is not None and gu > bound:
            continue
        for v, b in q.terms.items():
            if bound is not None and gu + grade(v) > bound:
                continue
            ab = a * b
            for w, m in word_product(u, v).items():
                val = out.get(w, 0) + ab * m
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
    return NCPolynomial(p.alpha, out, bound)


def conc(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return _bilinear(p, q, lambda u, v: {u + v: 1})


def shuffle(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    return _bilinear(p, q, shuffle_words)


def stuffle(p: NCPolynomial, q: NCPolynomial) -> NCPolynomial:
    if p.alpha is X or q.alpha is X:
        raise ValueError("the quasi-shuffle product is defined on Y-words only")
    return _bilinear(p, q, stuffle_words)


def power(p: NCPolynomial, n: int, product=conc) -> NCPolynomial:
    out = NCPolynomial.one(p.alpha, p.bound)
    for _ in range(n):
        out = product(out, p)
    return out


def pairing(series: NCPolynomial, poly: NCPolynomial) -> Scalar:
    """<series | poly> = sum of coefficient products.

    Raises when ``poly`` has a word beyond the series truncation bound, since
    the answer would silently lose information.
    """
    if series.bound is not None:
        deg = poly.degree()
        if deg > series.bound:
            raise ValueError(
                f"polynomial of grade {deg} exceeds the series truncation bound {series.bound}"
            )
    total = Fraction(0)
    small, big = (series.terms, poly.terms)
    if len(small) > len(big):
        small, big = big, small
    for w, c in small.items():
        d = big.get(w)
        if d:
            total = total + c * d
    return total


def _series_of(S: NCPolynomial, N: Optional[int]) -> int:
    n = N if N is not None else S.bound
    if n is None:
        raise ValueError("a truncation bound is required")
    return n


def exp_conc(S: NCPolynomial, N: Optional[int] = None, product=conc) -> NCPolynomial:
    """exp(S) truncated at grade N; S must have zero constant term."""
    n = _series_of(S, N)
    if S.constant_term():
        raise ValueError("exp needs a series without constant term")
    S = S.truncate(n)
    out = NCPolynomial.one(S.alpha, n)
    term = NCPolynomial.one(S.alpha, n)
    k = 1
    while True:
        term = product(term, S).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
        k += 1
    return out


def log_conc(S: NCPolynomial, N: Optional[int] = None, product=conc) -> NCPolynomial:
    """log(S) truncated at grade N; S must have constant term 1."""
    n = _series_of(S, N)
    if S.constant_term() != 1:
        raise ValueError("log needs a series with constant term 1")
    S = S.truncate(n)
    R = S - NCPolynomial.one(S.alpha, n)
    out = NCPolynomial.zero(S.alpha, n)
    term = NCPolynomial.one(S.alpha, n)
    k = 1
    while True:
        term = product(term, R)
        if not term:
            break
        out = out + term.scale(Fraction((-1) ** (k - 1), k))
        k += 1
    return out


# ---------------------------------------------------------------------------
# coproducts, as dicts over pair-words (u, v)

def coproduct_image(w: Word, which: str, alpha=None) -> Dict[tuple, int]:
    w = tuple(w)
    if which == "conc":
        return {(w[:i], w[i:]): 1 for i in range(len(w) + 1)}
    if which == "shuffle":
        out: Dict[tuple, int] = {}
        n = len(w)
        for r in range(n + 1):
            for idx in combinations(range(n), r):
                s = set(idx)
                u = tuple(w[i] for i in idx)
                v = tuple(w[i] for i in range(n) if i not in s)
                out[(u, v)] = out.get((u, v), 0) + 1
        return out
    if which == "stuffle":
        return dict(_stuffle_coproduct(w))
    raise ValueError(f"unknown coproduct {which!r}")


@lru_cache(maxsize=None)
def _stuffle_coproduct(w: Word) -> tuple:
    # letters: y_k -> y_k(x)1 + 1(x)y_k + sum_{i+j=k} y_i(x)y_j; extended multiplicatively
    acc: Dict[tuple, int] = {(EMPTY, EMPTY): 1}
    for k in w:
        images = [((k,), EMPTY), (EMPTY, (k,))] + [((i,), (k - i,)) for i in range(1, k)]
        nxt: Dict[tuple, int] = {}
        for (u, v), c in acc.items():
            for a, b in images:
                key = (u + a, v + b)
                nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return tuple(acc.items())


def coproduct(p: NCPolynomial, which: str) -> Dict[tuple, Scalar]:
    out: Dict[tuple, Scalar] = {}
    for w, c in p.terms.items():
        for key, m in coproduct_image(w, which).items():
            v = out.get(key, 0) + c * m
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def tensor_square(S: NCPolynomial, bound: Optional[int] = None) -> Dict[tuple, Scalar]:
    """S (x) S restricted to pairs of total grade <= bound."""
    g = S.alpha.grade
    out = {}
    for u, a in S.terms.items():
        for v, b in S.terms.items():
            if bound is None or g(u) + g(v) <= bound:
                out[(u, v)] = a * b
    return out


def is_group_like(S: NCPolynomial, which: str, bound: Optional[int] = None) -> bool:
    """Delta(S) == S (x) S on all pairs of total grade <= bound."""
    n = _series_of(S, bound)
    if S.constant_term() != 1:
        return False
    g = S.alpha.grade
    lhs = coproduct(S.truncate(n), which)
    rhs = tensor_square(S.truncate(n), n)
    lhs = {k: v for k, v in lhs.items() if g(k[0]) + g(k[1]) <= n}
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, 0) - rhs.get(k, 0) == 0 for k in keys)


def is_primitive(p: NCPolynomial, which: str) -> bool:
    img = coproduct(p, which)
    expect: dict = {}
    for w, c in p.terms.items():
        for key in ((w, EMPTY), (EMPTY, w)):
            expect[key] = expect.get(key, 0) + c
    keys = set(img) | set(expect)
    return all(img.get(k, 0) - expect.get(k, 0) == 0 for k in keys)


def pair_tensor(t: Dict[tuple, Scalar], u: Word, v: Word) -> Scalar:
    return t.get((tuple(u), tuple(v)), Fraction(0))
