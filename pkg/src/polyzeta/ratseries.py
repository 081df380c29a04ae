"""Rational series as linear representations (nu, mu, eta).

Coefficients live in Q[t] (as :class:`SymPoly` in the symbol ``t``), so the
identities with a formal parameter can be checked exactly.  Matrices are
dense lists of lists; dimensions stay small.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple, Union

from .ncalg import T, SymPoly
from .words import X, Y, Alphabet, Word

Coeff = SymPoly
ZERO = SymPoly()
ONE = SymPoly.const(1)


def _c(v) -> SymPoly:
    return SymPoly.lift(v)


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Letter:
    alpha: str  # "X" or "Y"
    index: int


@dataclass(frozen=True)
class Scalar:
    value: SymPoly


@dataclass(frozen=True)
class Sum:
    left: "RatExpr"
    right: "RatExpr"


@dataclass(frozen=True)
class Conc:
    left: "RatExpr"
    right: "RatExpr"


@dataclass(frozen=True)
class Star:
    inner: "RatExpr"


@dataclass(frozen=True)
class Shuffle:
    left: "RatExpr"
    right: "RatExpr"


@dataclass(frozen=True)
class Stuffle:
    left: "RatExpr"
    right: "RatExpr"


RatExpr = Union[Letter, Scalar, Sum, Conc, Star, Shuffle, Stuffle]


def alphabet_of(e: RatExpr) -> Optional[str]:
    """'X', 'Y' or None (pure scalar); mixing raises."""
    if isinstance(e, Letter):
        return e.alpha
    if isinstance(e, Scalar):
        return None
    parts = [e.inner] if isinstance(e, Star) else [e.left, e.right]
    found = {a for a in map(alphabet_of, parts) if a}
    if len(found) > 1:
        raise ValueError("expression mixes X and Y letters")
    if isinstance(e, Stuffle) and found == {"X"}:
        raise ValueError("the quasi-shuffle needs Y letters")
    return found.pop() if found else None


# ---------------------------------------------------------------------------
# linear representations

Matrix = List[List[SymPoly]]


def _zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def _identity(n: int) -> Matrix:
    m = _zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def _kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca, rb, cb = len(a), len(a[0]) if a else 0, len(b), len(b[0]) if b else 0
    out = _zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                for l in range(cb):
                    y = b[k][l]
                    if y:
                        out[i * rb + k][j * cb + l] = x * y
    return out


def _madd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _vecmat(v: List[SymPoly], m: Matrix) -> List[SymPoly]:
    out = [ZERO] * (len(m[0]) if m else 0)
    for i, x in enumerate(v):
        if not x:
            continue
        for j, y in enumerate(m[i]):
            if y:
                out[j] = out[j] + x * y
    return out


def _dot(u: List[SymPoly], v: List[SymPoly]) -> SymPoly:
    out = ZERO
    for x, y in zip(u, v):
        if x and y:
            out = out + x * y
    return out


def _outer(col: List[SymPoly], row: List[SymPoly]) -> Matrix:
    return [[a * b for b in row] for a in col]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    return [_vecmat(r, b) for r in a]


@dataclass(frozen=True)
class LinearRepresentation:
    alpha: Optional[str]
    nu: Tuple[SymPoly, ...]
    mu: Dict[int, Matrix]
    eta: Tuple[SymPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.nu)

    def matrix(self, letter: int) -> Optional[Matrix]:
        return self.mu.get(letter)

    def constant_term(self) -> SymPoly:
        return _dot(list(self.nu), list(self.eta))

    def letters(self) -> List[int]:
        return sorted(self.mu)


def _block(n1: int, n2: int, a: Optional[Matrix], b: Optional[Matrix], corner: Optional[Matrix]) -> Matrix:
    n = n1 + n2
    out = _zeros(n, n)
    if a:
        for i in range(n1):
            out[i][:n1] = a[i]
    if b:
        for i in range(n2):
            out[n1 + i][n1:] = b[i]
    if corner:
        for i in range(n1):
            for j in range(n2):
                out[i][n1 + j] = corner[i][j]
    return out


def _rep_letter(alpha: str, k: int) -> LinearRepresentation:
    m = _zeros(2, 2)
    m[0][1] = ONE
    return LinearRepresentation(alpha, (ONE, ZERO), {k: m}, (ZERO, ONE))


def _rep_scalar(c: SymPoly) -> LinearRepresentation:
    return LinearRepresentation(None, (c,), {}, (ONE,))


def _rep_sum(r1, r2, alpha) -> LinearRepresentation:
    n1, n2 = r1.dim, r2.dim
    mu = {}
    for k in set(r1.mu) | set(r2.mu):
        mu[k] = _block(n1, n2, r1.mu.get(k), r2.mu.get(k), None)
    return LinearRepresentation(alpha, r1.nu + r2.nu, mu, r1.eta + r2.eta)


def _rep_conc(r1, r2, alpha) -> LinearRepresentation:
    # states Q1 then Q2; leaving Q1 through eta1 nu2 before reading a letter of Q2
    n1, n2 = r1.dim, r2.dim
    bridge = _outer(list(r1.eta), list(r2.nu))
    mu = {}
    for k in set(r1.mu) | set(r2.mu):
        m2 = r2.mu.get(k)
        corner = _matmul(bridge, m2) if m2 else None
        mu[k] = _block(n1, n2, r1.mu.get(k), m2, corner)
    c2 = r2.constant_term()
    eta = tuple(x * c2 for x in r1.eta) + r2.eta
    nu = r1.nu + (ZERO,) * n2
    return LinearRepresentation(alpha, nu, mu, eta)


def _rep_star(r, alpha) -> LinearRepresentation:
    if r.constant_term():
        raise ValueError("star of a series with nonzero constant term")
    n = r.dim
    loop = _outer(list(r.eta), list(r.nu))
    mu = {}
    for k, m in r.mu.items():
        first = _vecmat(list(r.nu), m)
        inner = _madd(m, _matmul(loop, m))
        out = _zeros(n + 1, n + 1)
        out[0][1:] = first
        for i in range(n):
            out[1 + i][1:] = inner[i]
        mu[k] = out
    return LinearRepresentation(alpha, (ONE,) + (ZERO,) * n, mu, (ONE,) + r.eta)


def _rep_tensor(r1, r2, alpha, quasi: bool) -> LinearRepresentation:
    n1, n2 = r1.dim, r2.dim
    I1, I2 = _identity(n1), _identity(n2)
    letters = set(r1.mu) | set(r2.mu)
    if quasi:
        letters |= {i + j for i in r1.mu for j in r2.mu}
    mu = {}
    for k in sorted(letters):
        m = _zeros(n1 * n2, n1 * n2)
        if k in r1.mu:
            m = _madd(m, _kron(r1.mu[k], I2))
        if k in r2.mu:
            m = _madd(m, _kron(I1, r2.mu[k]))
        if quasi:
            for i in r1.mu:
                j = k - i
                if j in r2.mu:
                    m = _madd(m, _kron(r1.mu[i], r2.mu[j]))
        mu[k] = m
    nu = tuple(a * b for a in r1.nu for b in r2.nu)
    eta = tuple(a * b for a in r1.eta for b in r2.eta)
    return LinearRepresentation(alpha, nu, mu, eta)


def rep_of(e: RatExpr, _alpha: Optional[str] = None) -> LinearRepresentation:
    """Linear representation of a rational expression."""
    alpha = _alpha or alphabet_of(e)
    if isinstance(e, Letter):
        return _rep_letter(e.alpha, e.index)
    if isinstance(e, Scalar):
        return _rep_scalar(e.value)
    if isinstance(e, Star):
        return _rep_star(rep_of(e.inner, alpha), alpha)
    if isinstance(e, Conc) and isinstance(e.left, Scalar):
        # scalar action, no extra states
        r = rep_of(e.right, alpha)
        return LinearRepresentation(alpha, tuple(e.left.value * x for x in r.nu), r.mu, r.eta)
    if isinstance(e, Conc) and isinstance(e.right, Scalar):
        r = rep_of(e.left, alpha)
        return LinearRepresentation(alpha, r.nu, r.mu, tuple(x * e.right.value for x in r.eta))
    r1, r2 = rep_of(e.left, alpha), rep_of(e.right, alpha)
    if isinstance(e, Sum):
        return _rep_sum(r1, r2, alpha)
    if isinstance(e, Conc):
        return _rep_conc(r1, r2, alpha)
    if isinstance(e, Shuffle):
        return _rep_tensor(r1, r2, alpha, quasi=False)
    if isinstance(e, Stuffle):
        return _rep_tensor(r1, r2, alpha, quasi=True)
    raise TypeError(f"not an expression: {e!r}")


def from_matrices(nu, mu: Dict, eta, alpha: Optional[str] = None) -> LinearRepresentation:
    """Build a representation from plain nested lists (entries lifted to Q[t])."""
    mats = {}
    for key, m in mu.items():
        a, k = _letter_key(key)
        alpha = alpha or a
        mats[k] = [[_c(v) for v in row] for row in m]
    return LinearRepresentation(alpha, tuple(map(_c, nu)), mats, tuple(map(_c, eta)))


def shuffle_rep(r1: LinearRepresentation, r2: LinearRepresentation) -> LinearRepresentation:
    return _rep_tensor(r1, r2, r1.alpha or r2.alpha, quasi=False)


def stuffle_rep(r1: LinearRepresentation, r2: LinearRepresentation) -> LinearRepresentation:
    return _rep_tensor(r1, r2, r1.alpha or r2.alpha, quasi=True)


def _as_rep(e) -> LinearRepresentation:
    if isinstance(e, LinearRepresentation):
        return e
    if isinstance(e, str):
        e = parse(e)
    return rep_of(e)


def coefficient(rep, w) -> SymPoly:
    """<S | w> = nu mu(w) eta."""
    rep = _as_rep(rep)
    v = list(rep.nu)
    for k in w:
        m = rep.mu.get(k)
        if m is None:
            return ZERO
        v = _vecmat(v, m)
    return _dot(v, list(rep.eta))


def expand(rep, N: int, alpha: Optional[str] = None) -> Dict[Word, SymPoly]:
    """All nonzero coefficients on words of grade <= N."""
    rep = _as_rep(rep)
    alpha_obj: Alphabet = Y if (alpha or rep.alpha) == "Y" else X
    letters = [k for k in alpha_obj.words(1)] if alpha_obj is X else [(k,) for k in range(1, N + 1)]
    out: Dict[Word, SymPoly] = {}
    eta = list(rep.eta)

    def walk(w: Word, g: int, v: List[SymPoly]) -> None:
        c = _dot(v, eta)
        if c:
            out[w] = c
        for (k,) in letters:
            gk = alpha_obj.grade((k,))
            m = rep.mu.get(k)
            if m is None or g + gk > N:
                continue
            nv = _vecmat(v, m)
            if any(nv):
                walk(w + (k,), g + gk, nv)

    walk((), 0, list(rep.nu))
    return out


def equal_up_to(e1, e2, N: int) -> bool:
    r1, r2 = _as_rep(e1), _as_rep(e2)
    alpha = r1.alpha or r2.alpha
    a, b = expand(r1, N, alpha), expand(r2, N, alpha)
    return a == b


def star_of_plane(c: Dict, alpha: Optional[str] = None) -> LinearRepresentation:
    """(sum_x c(x) x)* as a one-state representation.

    Keys are letter indices or names such as ``"x0"``/``"y2"``.
    """
    mu = {}
    for key, v in c.items():
        a, k = _letter_key(key)
        alpha = alpha or a
        mu[k] = [[_c(v)]]
    return LinearRepresentation(alpha, (ONE,), mu, (ONE,))


def _letter_key(key) -> Tuple[Optional[str], int]:
    if isinstance(key, int):
        return None, key
    m = re.fullmatch(r"([xy])(\d+)", key)
    if not m:
        raise ValueError(f"bad letter {key!r}")
    return ("X" if m.group(1) == "x" else "Y"), int(m.group(2))


def stuffle_star_identity(a: Dict, b: Dict, N: int) -> bool:
    """(sum a_s y_s)* qsh (sum b_s y_s)* = (sum (a_s+b_s) y_s + sum a_s b_r y_{s+r})*."""
    A = {_letter_key(k)[1]: _c(v) for k, v in a.items()}
    Bm = {_letter_key(k)[1]: _c(v) for k, v in b.items()}
    rhs: Dict[int, SymPoly] = {}
    for s, v in list(A.items()) + list(Bm.items()):
        rhs[s] = rhs.get(s, ZERO) + v
    for s, x in A.items():
        for r, y in Bm.items():
            rhs[s + r] = rhs.get(s + r, ZERO) + x * y
    rhs = {k: v for k, v in rhs.items() if v}
    left = _rep_tensor(star_of_plane(A, "Y"), star_of_plane(Bm, "Y"), "Y", quasi=True)
    return expand(left, N, "Y") == expand(star_of_plane(rhs, "Y"), N, "Y")


def stuffle_power_star(k: int, n: int, form: str = "binomial") -> RatExpr:
    """A star of a combination of y_k, y_2k, ..., y_nk.

    ``binomial`` uses the weights binom(n, i), which is what (y_k*)^{qsh n}
    expands to.  ``printed`` uses n-i+1 and ``shifted`` uses n-i; these two
    only agree with the power for n <= 2 (resp. never) and are kept so the
    mismatch can be demonstrated.
    """
    weights = {
        "binomial": lambda i: comb(n, i),
        "printed": lambda i: n - i + 1,
        "shifted": lambda i: n - i,
    }
    if form not in weights:
        raise ValueError(f"unknown form {form!r}")
    inner: Optional[RatExpr] = None
    for i in range(1, n + 1):
        c = weights[form](i)
        if not c:
            continue
        term = Conc(Scalar(SymPoly.const(c)), Letter("Y", i * k))
        inner = term if inner is None else Sum(inner, term)
    if inner is None:
        return Scalar(ONE)
    return Star(inner)


def stuffle_power(k: int, n: int) -> RatExpr:
    """(y_k*) qsh ... qsh (y_k*), n factors."""
    e: RatExpr = Star(Letter("Y", k))
    for _ in range(n - 1):
        e = Stuffle(e, Star(Letter("Y", k)))
    return e


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<qsh>qsh)|(?P<sh>sh)|(?P<letter>x[01]|y\d+)|(?P<t>t)"
    r"|(?P<op>[-+.*()^/]))"
)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r}", pos)
        kind = m.lastgroup
        val = m.group(kind)
        start = m.start(kind)
        out.append((kind if kind != "op" else val, val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    # sum > shuffle/stuffle > concatenation > star
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: Optional[str] = None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> RatExpr:
        e = self.expr()
        self.take("end")
        return e

    def expr(self) -> RatExpr:
        e = self.product_level()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.product_level()
            if op == "-":
                rhs = Conc(Scalar(SymPoly.const(-1)), rhs)
            e = Sum(e, rhs)
        return e

    def product_level(self) -> RatExpr:
        e = self.conc_level()
        while self.peek() in ("sh", "qsh"):
            op = self.take()[0]
            rhs = self.conc_level()
            e = Shuffle(e, rhs) if op == "sh" else Stuffle(e, rhs)
        return e

    def _starts_factor(self) -> bool:
        return self.peek() in ("num", "letter", "t", "(")

    def conc_level(self) -> RatExpr:
        if self.peek() == "-":
            self.take()
            return Conc(Scalar(SymPoly.const(-1)), self.conc_level())
        e = self.factor()
        while self.peek() == "." or self._starts_factor():
            if self.peek() == ".":
                self.take()
            e = Conc(e, self.factor())
        return e

    def factor(self) -> RatExpr:
        pos = self.toks[self.i][2]
        e = self.atom()
        while self.peek() == "*":
            self.take()
            if isinstance(e, Scalar) or _constant_of(e):
                raise ParseError("star of a series with nonzero constant term", pos)
            e = Star(e)
        return e

    def atom(self) -> RatExpr:
        kind, val, pos = self.toks[self.i]
        if kind == "letter":
            self.take()
            if val[0] == "x":
                return Letter("X", int(val[1]))
            k = int(val[1:])
            if k < 1:
                raise ParseError("Y letters start at y1", pos)
            return Letter("Y", k)
        if kind == "num":
            self.take()
            num = Fraction(int(val))
            if self.peek() == "/":
                self.take()
                den = int(self.take("num")[1])
                if den == 0:
                    raise ParseError("zero denominator", pos)
                num /= den
            return Scalar(SymPoly.const(num))
        if kind == "t":
            self.take()
            n = 1
            if self.peek() == "^":
                self.take()
                n = int(self.take("num")[1])
            return Scalar(SymPoly.sym(T) ** n)
        if kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def _constant_of(e: RatExpr) -> SymPoly:
    if isinstance(e, Letter):
        return ZERO
    if isinstance(e, Scalar):
        return e.value
    if isinstance(e, Star):
        return ONE
    a, b = _constant_of(e.left), _constant_of(e.right)
    if isinstance(e, Sum):
        return a + b
    return a * b


def parse(text: str) -> RatExpr:
    """Parse the small rational-expression language.

    ``x0 x1`` and ``x0 . x1`` concatenate, ``sh``/``qsh`` are the shuffle and
    quasi-shuffle, postfix ``*`` is the Kleene star; scalars are rationals
    and powers of ``t``.
    """
    e = _Parser(text).parse()
    alphabet_of(e)
    return e


def render_coeff(c: SymPoly) -> str:
    return c.render(style="z", mul="*") if c else "0"
