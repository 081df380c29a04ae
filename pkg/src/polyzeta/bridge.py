"""Generating series of polyzetas, the bridge equations and the relation miner.

Symbols: ``gamma``, ``zY[l]`` (the Sigma_l coordinate of the stuffle series,
l a Lyndon Y-word other than y1) and ``zX[l]`` (the S_l coordinate of the
shuffle series, l a Lyndon X-word other than a letter).

The miner identifies coordinates on both sides of

    Z_gamma = B(y1) pi_Y(Z_sh)

weight by weight.  Pairing with Sigma_l gives one equation per Lyndon Y-word;
pairing pi_X(Z_gamma) with S_l gives one per Lyndon X-word (for those S_l
only see words ending in x1, where pi_X(Z_gamma) and B(x1) Z_sh agree).  Each
weight slice is a linear system in the new symbols and in products of the
irreducibles found so far; exact elimination turns it into rewriting rules.
"""
from __future__ import annotations

import time

import flint
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional

from . import polydict as pd
from .bases import (
    GroupLikeSeries,
    assemble_group_like,
    lower_word,
    pbw_basis,
    sigma_fast,
    upper_lyndon,
    upper_word,
)
from .ncalg import (
    GAMMA,
    NCPolynomial,
    Symbol,
    SymPoly,
    exp_conc,
    stuffle,
    shuffle,
    zX,
    zY,
)
from .words import (
    X,
    Y,
    Word,
    compositions,
    lyndon_factorization,
    lyndon_of_grade,
    lyndon_words,
    pi_X,
    pi_Y,
)


class InconsistentSystem(RuntimeError):
    """The bridge equations contradict the relations found so far."""


# ---------------------------------------------------------------------------
# combinatorial tables shared by all passes

@lru_cache(maxsize=None)
def _lyn(alpha_name: str, p: int) -> tuple:
    """Lyndon words of grade p carrying a symbol (letters of X and y1 do not)."""
    if alpha_name == "X":
        return tuple(l for l in lyndon_of_grade(X, p) if len(l) >= 2)
    return tuple(l for l in lyndon_of_grade(Y, p) if l != (1,))


@lru_cache(maxsize=None)
def _pbw_support_X(p: int) -> tuple:
    """X-words of length p whose Lyndon factors all have length >= 2."""
    out = []
    for w in X.words(p):
        if all(len(l) >= 2 for l, _ in lyndon_factorization(w, X)):
            out.append((w, tuple(lyndon_factorization(w, X))))
    return tuple(out)


@lru_cache(maxsize=None)
def _P_X_tail1(v: Word) -> tuple:
    return tuple((u, int(c)) for u, c in lower_word(v, "shuffle-X").terms.items() if u[-1] == 1)


@lru_cache(maxsize=None)
def _sigma_terms(l: Word) -> tuple:
    return tuple(sigma_fast(l).terms.items())


@lru_cache(maxsize=None)
def _ywords(p: int) -> tuple:
    return tuple(Y.words(p))


@lru_cache(maxsize=4)
def _sigma_matrix(p: int):
    """Sigma_u[w] for u, w running over the Y-words of weight p (flint fmpq_mat)."""
    words = _ywords(p)
    index = {w: j for j, w in enumerate(words)}
    n = len(words)
    M = flint.fmpq_mat(n, n)
    for i, u in enumerate(words):
        for w, c in sigma_fast(u).terms.items():
            M[i, index[w]] = flint.fmpq(c.numerator, c.denominator)
    return M


def _to_mat(polys: List[pd.Poly], col_of: Dict[tuple, int], ncols: int):
    M = flint.fmpq_mat(len(polys), ncols)
    for i, poly in enumerate(polys):
        for m, c in poly.items():
            M[i, col_of[m]] = flint.fmpq(c.numerator, c.denominator)
    return M


def _mat_sigma_times(p: int, T: List[pd.Poly], L: List[pd.Poly], cols: list) -> list:
    """Reduced row echelon form of <T|Sigma_u> - L, as [(pivot monomial, row dict)]."""
    col_of = {m: j for j, m in enumerate(cols)}
    E = _sigma_matrix(p) * _to_mat(T, col_of, len(cols)) - _to_mat(L, col_of, len(cols))
    R, rank = E.rref()
    out = []
    ncols = len(cols)
    for i in range(rank):
        row: Dict[tuple, Fraction] = {}
        piv = None
        for j in range(ncols):
            v = R[i, j]
            if v != 0:
                if piv is None:
                    piv = cols[j]
                row[cols[j]] = Fraction(int(v.p), int(v.q))
        out.append((piv, row))
    return out


# ---------------------------------------------------------------------------
# results

@dataclass
class RelationRule:
    lhs: Symbol
    rhs: SymPoly
    weight: int

    @property
    def side(self) -> str:
        return self.lhs.family

    def render(self, style: str = "basis", mul: str = " ") -> str:
        return f"{self.lhs.name(style)} -> {self.rhs.render(style=style, mul=mul)}"

    def __repr__(self) -> str:
        return self.render()


@dataclass
class MinerReport:
    max_weight: int
    rules_Y: List[RelationRule]
    rules_X: List[RelationRule]
    irr_Y: List[Symbol]
    irr_X: List[Symbol]
    nf_Y: Dict[Symbol, SymPoly] = field(repr=False)
    nf_X: Dict[Symbol, SymPoly] = field(repr=False)
    gamma_residue: int = 0
    seconds: float = 0.0
    _kernel: dict = field(default_factory=dict, repr=False)

    def rules(self, side: str) -> List[RelationRule]:
        return self.rules_Y if side.upper() == "Y" else self.rules_X

    def irreducibles(self, side: str) -> List[Symbol]:
        return self.irr_Y if side.upper() == "Y" else self.irr_X

    def rules_of_weight(self, side: str, p: int) -> List[RelationRule]:
        return [r for r in self.rules(side) if r.weight == p]

    def normal_form(self, poly, side: str = "Y") -> SymPoly:
        """Rewrite every zeta symbol into irreducibles of the requested side."""
        nf = self.nf_Y if side.upper() == "Y" else self.nf_X
        poly = SymPoly.lift(poly)
        return SymPoly(pd.substitute(poly.terms, {s.id: v.terms for s, v in nf.items()}))

    def rule_for(self, sym: Symbol) -> Optional[RelationRule]:
        for r in self.rules(sym.family):
            if r.lhs is sym:
                return r
        return None

    @property
    def kernel_Y(self) -> List[NCPolynomial]:
        return [self.kernel_generator(r) for r in self.rules_Y]

    @property
    def kernel_X(self) -> List[NCPolynomial]:
        return [self.kernel_generator(r) for r in self.rules_X]

    def kernel_generator(self, rule: RelationRule) -> NCPolynomial:
        """Q_l = Sigma_l - rhs lifted (products become quasi-shuffles), resp. S_l / shuffles."""
        if rule.lhs in self._kernel:
            return self._kernel[rule.lhs]
        out = basis_element(rule.lhs)
        for powers, c in rule.rhs.items():
            out = out - lift_monomial(powers, rule.side).scale(c)
        self._kernel[rule.lhs] = out
        return out


def basis_element(sym: Symbol) -> NCPolynomial:
    if sym.family == "Y":
        return sigma_fast(sym.word)
    if sym.family == "X":
        return upper_lyndon(sym.word, "X")
    raise ValueError(f"{sym} has no basis element")


def lift_monomial(powers, side: str) -> NCPolynomial:
    alpha = Y if side == "Y" else X
    product = stuffle if side == "Y" else shuffle
    out = NCPolynomial.one(alpha)
    for s, k in powers:
        for _ in range(k):
            out = product(out, basis_element(s))
    return out


# ---------------------------------------------------------------------------
# the miner

def preference_key(l: Word, side: str) -> tuple:
    """Order in which Lyndon words are tried as irreducibles (smallest first).

    Letter powers (y_p, x0^(p-1)x1) come first, then higher depth; ties go
    to the smaller word on Y and to the larger word on X.
    """
    if side == "Y":
        return (len(l) > 1, -len(l), Y.key(l))
    power = l.count(1) == 1
    return (not power, -l.count(1), tuple(-c for c in l))


class _Pass:
    """One elimination sweep expressing everything in one family's irreducibles."""

    def __init__(self, N: int, own: str, gamma: bool = True):
        self.N = N
        self.own = own
        self.gamma_id = GAMMA.id
        self.nf: Dict[int, pd.Poly] = {}  # symbol id -> normal form (lower weights)
        self.irr: List[Symbol] = []
        self.rules: List[RelationRule] = []
        self.zx: Dict[Word, pd.Poly] = {}  # shuffle-series coefficients on words ending in x1
        self.gamma_residue = 0

    # coordinates ---------------------------------------------------------
    def coord(self, sym: Symbol) -> pd.Poly:
        img = self.nf.get(sym.id)
        if img is not None:
            return img
        return {(sym.id,): Fraction(1)}

    def coordY(self, l: Word) -> pd.Poly:
        if l == (1,):
            return {(self.gamma_id,): Fraction(1)}
        return self.coord(zY(l))

    def coordX(self, l: Word) -> pd.Poly:
        return self.coord(zX(l))

    def _pbw_coeff(self, fact, coord) -> pd.Poly:
        c: pd.Poly = dict(pd.ONE)
        for l, i in fact:
            cl = coord(l)
            for _ in range(i):
                c = pd.mul(c, cl)
            if i > 1:
                c = pd.scale(c, Fraction(1, factorial(i)))
        return c

    # equations -----------------------------------------------------------
    def _shuffle_slice(self, p: int) -> None:
        """Coefficients of the shuffle series on words of length p ending in x1."""
        for v, fact in _pbw_support_X(p):
            cv = self._pbw_coeff(fact, self.coordX)
            for u, m in _P_X_tail1(v):
                acc = self.zx.get(u)
                if acc is None:
                    acc = self.zx[u] = {}
                pd.add_into(acc, cv, m)

    def _B(self, p: int) -> List[pd.Poly]:
        """B(y1) = exp(gamma y1 - sum_{k>=2} zeta(k) (-y1)^k / k) up to y1^p."""
        a = [None, {(self.gamma_id,): Fraction(1)}]
        for k in range(2, p + 1):
            a.append(pd.scale(self.coordY((k,)), Fraction(-((-1) ** k), k)))
        B = [dict(pd.ONE)]
        for k in range(1, p + 1):
            bk: pd.Poly = {}
            for j in range(1, k + 1):
                pd.mul_into(bk, a[j], B[k - j], Fraction(j, k))
            B.append(bk)
        return B

    def equations(self, p: int) -> tuple:
        """(rows of T = B(y1) pi_Y(Z_sh), left-hand sides <Z_st | Sigma_u>) at weight p.

        The bridge identity holds iff <T | Sigma_u> = <Z_st | Sigma_u> for every
        Y-word u; the right side is the PBW coefficient prod c_l^i / i!.
        """
        self._shuffle_slice(p)
        B = self._B(p)
        T: List[pd.Poly] = []
        for w in _ywords(p):
            acc: pd.Poly = {}
            k = 0
            while True:
                rest = w[k:]
                z = pd.ONE if not rest else self.zx.get(pi_X(rest))
                if z:
                    pd.mul_into(acc, B[k], z)
                if k < len(w) and w[k] == 1:
                    k += 1
                else:
                    break
            T.append(acc)
        L = [self._pbw_coeff(lyndon_factorization(u, Y), self.coordY) for u in _ywords(p)]
        return T, L

    # elimination ---------------------------------------------------------
    def solve(self, p: int) -> None:
        own_new = [zY(l) for l in _lyn("Y", p)] if self.own == "Y" else [
            zX(l) for l in _lyn("X", p)
        ]
        cross_new = [zX(l) for l in _lyn("X", p)] if self.own == "Y" else [
            zY(l) for l in _lyn("Y", p)
        ]
        T, L = self.equations(p)
        rank = {}
        for i, s in enumerate(cross_new):
            rank[(s.id,)] = (1, i)
        # the most preferred irreducible candidates pivot last
        for i, s in enumerate(sorted(own_new, key=lambda s: preference_key(s.word, self.own))):
            rank[(s.id,)] = (2, -i)
        g = self.gamma_id

        def priority(m):
            r = rank.get(m)
            if r is not None:
                return r
            if g in m:
                return (0, m)
            return (3, m)

        monos = set()
        for poly in T:
            monos.update(poly)
        for poly in L:
            monos.update(poly)
        cols = sorted(monos, key=priority)
        rows = _mat_sigma_times(p, T, L, cols)
        if any(priority(c)[0] == 0 for c in cols):
            self.gamma_residue += 1
        solved: Dict[int, pd.Poly] = {}
        for piv, row in rows:
            r = rank.get(piv)
            if r is None:
                what = "gamma monomial" if g in piv else "product of irreducibles"
                raise InconsistentSystem(
                    f"weight {p}: a relation with leading {what} {piv} appeared"
                )
            rest = {m: -c for m, c in row.items() if m != piv}
            if any(g in m for m in rest):
                raise InconsistentSystem(f"weight {p}: gamma survived elimination")
            solved[piv[0]] = rest
        for s in cross_new:
            if s.id not in solved:
                raise InconsistentSystem(
                    f"weight {p}: {s} is not determined by the {self.own}-family symbols"
                )
        for s in own_new:
            if s.id in solved:
                rhs = solved[s.id]
                self.nf[s.id] = rhs
                self.rules.append(RelationRule(s, SymPoly(dict(rhs)), p))
            else:
                self.irr.append(s)
        for s in cross_new:
            self.nf[s.id] = solved[s.id]
        # bring stored shuffle coefficients of this weight to normal form
        new_ids = {s.id: self.nf[s.id] for s in own_new + cross_new if s.id in self.nf}
        for u in list(self.zx):
            if len(u) == p:
                self.zx[u] = pd.substitute(self.zx[u], new_ids)

    def run(self, progress=None) -> None:
        for p in range(1, self.N + 1):
            t0 = time.perf_counter()
            self.solve(p)
            if progress:
                progress(self.own, p, time.perf_counter() - t0)


def mine_relations(N: int, progress=None) -> MinerReport:
    """Run the identification up to weight N on both sides."""
    t0 = time.perf_counter()
    py = _Pass(N, "Y")
    py.run(progress)
    px = _Pass(N, "X")
    px.run(progress)
    rules_Y = sorted(py.rules, key=lambda r: (r.weight, Y.key(r.lhs.word)), reverse=False)
    rules_X = sorted(px.rules, key=lambda r: (r.weight, X.key(r.lhs.word)))
    to_sym = lambda nf: {Symbol.from_id(i): SymPoly(dict(v)) for i, v in nf.items()}
    return MinerReport(
        max_weight=N,
        rules_Y=rules_Y,
        rules_X=rules_X,
        irr_Y=sorted(py.irr, key=lambda s: (s.weight, Y.key(s.word))),
        irr_X=sorted(px.irr, key=lambda s: (s.weight, X.key(s.word))),
        nf_Y=to_sym(py.nf),
        nf_X=to_sym(px.nf),
        gamma_residue=py.gamma_residue + px.gamma_residue,
        seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# generating series

def _zeta_letter_symbol(k: int, side: str) -> Symbol:
    return zY((k,)) if side == "Y" else zX((0,) * (k - 1) + (1,))


def build_B(letter: str = "y1", include_gamma: bool = True, N: int = 4) -> NCPolynomial:
    """B(t) = exp(gamma t - sum_{k>=2} zeta(k) (-t)^k / k) for t = y1 or x1.

    Without gamma this is B'(t).  zeta(k) is zY[y_k] with t = y1 and
    zX[x0^(k-1) x1] with t = x1.
    """
    if letter not in ("y1", "x1"):
        raise ValueError("letter must be y1 or x1")
    side = "Y" if letter == "y1" else "X"
    alpha = Y if side == "Y" else X
    a = [SymPoly(), SymPoly.sym(GAMMA) if include_gamma else SymPoly()]
    for k in range(2, N + 1):
        a.append(SymPoly.sym(_zeta_letter_symbol(k, side)) * Fraction(-((-1) ** k), k))
    b = [SymPoly.const(1)]
    for k in range(1, N + 1):
        acc = SymPoly()
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j] * Fraction(j, k)
        b.append(acc)
    return NCPolynomial(alpha, {(1,) * k: c for k, c in enumerate(b) if c}, N)


@lru_cache(maxsize=8)
def _pair(kind: str, N: int):
    return pbw_basis(kind, N)


def build_Zsh(N: int) -> GroupLikeSeries:
    coords = {l: SymPoly.sym(zX(l)) for l in lyndon_words(X, N) if len(l) >= 2}
    Z = assemble_group_like(coords, _pair("shuffle-X", N), N)
    Z.certify()
    return Z


def build_Zst(N: int) -> GroupLikeSeries:
    coords = {l: SymPoly.sym(zY(l)) for l in lyndon_words(Y, N) if l != (1,)}
    Z = assemble_group_like(coords, _pair("stuffle-Y", N), N)
    Z.certify()
    return Z


def build_Zgamma(N: int) -> GroupLikeSeries:
    coords = {l: SymPoly.sym(zY(l)) for l in lyndon_words(Y, N) if l != (1,)}
    coords[(1,)] = SymPoly.sym(GAMMA)
    Z = assemble_group_like(coords, _pair("stuffle-Y", N), N)
    Z.certify()
    return Z


@lru_cache(maxsize=4)
def _report(N: int) -> "MinerReport":
    return mine_relations(N)


def gamma_divergent(w, N: Optional[int] = None, reduce: bool = True) -> SymPoly:
    """<B(y1) pi_Y(Z_sh) | w>, in gamma and the Y-side irreducibles.

    With ``reduce=False`` the shuffle-series coordinates zX[...] are kept.
    """
    w = tuple(w)
    p = Y.grade(w)
    N = max(N or p, p, 2)
    B = build_B("y1", True, N)
    Z = build_Zsh(max(len(pi_X(w)), 2))
    out = SymPoly()
    k = 0
    while True:
        rest = w[k:]
        z = Z[pi_X(rest)] if rest else Fraction(1)
        if z:
            out = out + SymPoly.lift(B[(1,) * k]) * SymPoly.lift(z)
        if k < len(w) and w[k] == 1:
            k += 1
        else:
            break
    if reduce:
        out = _report(N).normal_form(out, "Y")
    return out


@dataclass
class BridgeEquation:
    weight: int
    side: str
    label: Word  # the word u of the pairing <.|Sigma_u> or <.|S_u>
    poly: SymPoly  # LHS - RHS, raw coordinates

    def render(self) -> str:
        return f"{self.poly.render('z')} = 0"


def _raw_slices(N: int):
    """(T, L) per weight with no relation applied."""
    ps = _Pass(N, "Y")
    return [(p,) + ps.equations(p) for p in range(1, N + 1)]


def _dot(coeffs, polys, index) -> pd.Poly:
    acc: pd.Poly = {}
    for w, c in coeffs:
        pd.add_into(acc, polys[index[w]], c)
    return acc


def bridge_equations(N: int, mode: str = "lyndon", sides: str = "YX") -> List[BridgeEquation]:
    """Pairings of Z_gamma - B(y1) pi_Y(Z_sh) with Sigma_u (Y) and of its pi_X image with S_u (X).

    ``mode='lyndon'`` pairs with Lyndon-indexed duals only, ``mode='all'``
    with the duals of every word.
    """
    if mode not in ("lyndon", "all"):
        raise ValueError("mode is 'lyndon' or 'all'")
    out: List[BridgeEquation] = []
    for p, T, L in _raw_slices(N):
        words = _ywords(p)
        index = {w: i for i, w in enumerate(words)}
        if "Y" in sides:
            us = words if mode == "all" else [u for u in words if u in set(lyndon_of_grade(Y, p))]
            for u in us:
                eq = _dot(_sigma_terms(u), T, index)
                pd.add_into(eq, L[index[u]], -1)
                out.append(BridgeEquation(p, "Y", u, SymPoly(eq)))
        if "X" in sides:
            # <Z_gamma | w> from its PBW coordinates: sum_v L[v] Pi_v[w]
            Zg: List[pd.Poly] = [{} for _ in words]
            for v in words:
                if L[index[v]]:
                    for w, c in lower_word(v, "stuffle-Y").terms.items():
                        pd.add_into(Zg[index[w]], L[index[v]], c)
            xs = X.words(p) if mode == "all" else lyndon_of_grade(X, p)
            for u in xs:
                terms = []
                dual = upper_lyndon(u, "X") if mode == "lyndon" else upper_word(u, "X")
                for w, c in dual.terms.items():
                    yw = pi_Y(w)
                    if yw is not None:
                        terms.append((yw, c))
                eq = _dot(terms, T, index)
                pd.add_into(eq, _dot(terms, Zg, index), -1)
                out.append(BridgeEquation(p, "X", tuple(u), SymPoly(eq)))
    return out


def equation_residues(report: "MinerReport", mode: str = "all") -> List[BridgeEquation]:
    """Y-side bridge equations that do not vanish after rewriting by the report."""
    bad = []
    for eq in bridge_equations(report.max_weight, mode, sides="Y"):
        r = report.normal_form(eq.poly, "Y")
        if r:
            bad.append(BridgeEquation(eq.weight, eq.side, eq.label, r))
    return bad


# ---------------------------------------------------------------------------
# closed forms

def euler_even_ratio(k: int) -> Fraction:
    """zeta(2k)/pi^(2k) = k sum_l (-1)^(k+l)/l sum_{n1+..+nl=k} prod 1/(2 n_i + 1)!."""
    if k < 1:
        raise ValueError("k >= 1")
    total = Fraction(0)
    for comp in compositions(k):
        l = len(comp)
        prod = Fraction(1)
        for n in comp:
            prod /= factorial(2 * n + 1)
        total += Fraction((-1) ** (k + l), l) * prod
    return k * total


def run_ratios(k: int, check: bool = True) -> tuple:
    """(zeta({2}^k)/pi^(2k), zeta({3,1}^k)/pi^(4k)) = (1/(2k+1)!, 2/(4k+2)!).

    The second value is recovered from the first through
    (-t^2 x0 x1)* sh (t^2 x0 x1)* = (-4 t^4 x0^2 x1^2)*, whose t^(4k)
    coefficient gives sum_{a+b=2k} (-1)^a r_a r_b = (-4)^k zeta({3,1}^k)/pi^(4k).
    """
    if k < 1:
        raise ValueError("k >= 1")
    r2 = Fraction(1, factorial(2 * k + 1))
    r31 = Fraction(2, factorial(4 * k + 2))
    if check:
        conv = sum(
            Fraction((-1) ** a, factorial(2 * a + 1) * factorial(2 * (2 * k - a) + 1))
            for a in range(2 * k + 1)
        )
        if conv / (-4) ** k != r31:
            raise AssertionError("run ratio cross-check failed")
        from .ratseries import equal_up_to, parse

        if not equal_up_to(
            parse("(-t^2 x0 x1)* sh (t^2 x0 x1)*"), parse("(-4 t^4 x0 x0 x1 x1)*"), 4 * k
        ):
            raise AssertionError("rational identity behind the run ratios failed")
    return r2, r31


def newton_girard_check(r: int, N: int) -> bool:
    """y_r* = exp_stuffle(sum_k (-1)^(k-1) y_{kr} / k) up to weight N."""
    if r < 1 or N < r:
        raise ValueError("need r >= 1 and N >= r")
    lhs = NCPolynomial(Y, {(r,) * j: Fraction(1) for j in range(N // r + 1)}, N)
    gen = NCPolynomial(
        Y, {(k * r,): Fraction((-1) ** (k - 1), k) for k in range(1, N // r + 1)}, N
    )
    rhs = exp_conc(gen, N, product=stuffle)
    return lhs == rhs


# ---------------------------------------------------------------------------
# negative side

def build_Zneg(side: str, N: int) -> GroupLikeSeries:
    """Z^-_gamma (side='gamma', over Y) or Z^-_sh (side='sh', over X).

    Coordinates are the regularized values p_hat(1) (resp. p(1)) extended
    linearly over Sigma_l (resp. pi_Y(S_l)).
    """
    from . import negalog

    if N > 6:
        raise ValueError("N <= 6")
    if side == "gamma":
        coords = {}
        for l in lyndon_words(Y, N):
            coords[l] = sum(
                (c * negalog.gamma_neg(w) for w, c in _sigma_terms(l)), Fraction(0)
            )
        Z = assemble_group_like(coords, _pair("stuffle-Y", N), N)
    elif side == "sh":
        coords = {}
        for l in lyndon_words(X, N):
            val = Fraction(0)
            for w, c in upper_lyndon(l, "X").terms.items():
                yw = pi_Y(w)
                if yw is not None:
                    val += c * negalog.zeta_sh_neg(yw)
            coords[l] = val
        Z = assemble_group_like(coords, _pair("shuffle-X", N), N)
    else:
        raise ValueError("side is 'gamma' or 'sh'")
    Z.certify()
    return Z
