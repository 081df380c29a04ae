"""Floating-point MZVs, polylogarithms and harmonic sums.

Nested sums are evaluated as cumulative sums in ``numpy.longdouble``
(64-bit mantissa on x86).  Exact harmonic sums use ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import mpmath
import numpy as np

from .ncalg import GAMMA, Symbol, SymPoly

LD = np.longdouble


@dataclass(frozen=True)
class NumericConfig:
    terms: int = 100_000
    tol: float = 1e-3
    precision: int = 64  # binary digits

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.terms < 1000:
            raise ValueError("terms must be at least 1000")
        if self.precision < 24:
            raise ValueError("precision must be at least 24 bits")


def _dtype(cfg: NumericConfig):
    return LD if cfg.precision > 53 else np.float64


def _check_index(s: Sequence[int]) -> Tuple[int, ...]:
    s = tuple(int(x) for x in s)
    if not s:
        raise ValueError("empty index")
    if any(x < 1 for x in s):
        raise ValueError("indices must be >= 1")
    if s[0] < 2:
        raise ValueError(f"divergent index {s}: the first entry must be >= 2")
    return s


def partial_sums(s: Sequence[int], T: int, dtype=LD) -> np.ndarray:
    """P[n-1] = sum over n >= n1 > ... > nr > 0 of prod n_i^{-s_i}."""
    n = np.arange(1, T + 1, dtype=dtype)
    inner = np.ones(T, dtype=dtype)  # value of the empty tail for n1 = 1..T
    for k, e in enumerate(reversed(s)):
        terms = inner / n ** e
        cum = np.cumsum(terms)
        # next level needs the strict sum over m < n
        inner = np.concatenate(([dtype(0)], cum[:-1]))
    return cum


def tail_bound(s: Sequence[int], T: int) -> float:
    """Upper bound for the part of the nested sum with n1 > T.

    Uses sum_{n>n2>...} prod n_i^{-s_i} <= H_{n-1}^{r-1}/(r-1)! <= (1+log n)^{r-1}/(r-1)!
    and compares the outer sum with an integral (the summand is decreasing
    once 1 + log T >= (r-1)/s1).
    """
    r = len(s)
    s1 = s[0]
    f = lambda x: (1 + mpmath.log(x)) ** (r - 1) / (math.factorial(r - 1) * x ** s1)
    if 1 + math.log(T) < (r - 1) / s1:
        raise ValueError("T too small for the tail estimate")
    return float(f(T) + mpmath.quad(f, [T, mpmath.inf]))


def mzv(s: Sequence[int], cfg: NumericConfig = NumericConfig()) -> Tuple[float, float]:
    """(truncated value, error bound) for zeta(s1, ..., sr)."""
    s = _check_index(s)
    T = cfg.terms
    val = partial_sums(s, T, _dtype(cfg))[-1]
    eps = float(np.finfo(_dtype(cfg)).eps)
    err = tail_bound(s, T) + 4 * T * eps * abs(float(val))
    return float(val), err


def mzv_extrapolated(s: Sequence[int], cfg: NumericConfig = NumericConfig()) -> Tuple[float, float]:
    """Limit of the partial sums fitted on a geometric grid below T.

    The remainder after n1 <= T behaves like sum_{j<r} (a_j + b_j/T) log^j T / T
    (times T^{1-s1}); the fit is least squares in long double, and the
    returned error is the change between fits on [T/16, T] and [T/32, T/2].
    """
    s = _check_index(s)
    T = cfg.terms
    P = partial_sums(s, T, _dtype(cfg))
    r = len(s)

    def fit(top: int) -> float:
        xs = np.unique(np.geomspace(top // 16, top, 24).astype(int))
        rows = []
        for x in xs:
            L = math.log(x)
            base = float(x) ** (1 - s[0])
            row = [1.0]
            for j in range(r):
                row.append(base * L ** j)
                row.append(base * L ** j / float(x))
            rows.append(row)
        A = np.array(rows, dtype=float)
        b = np.array([float(P[x - 1]) for x in xs])
        # scale columns for conditioning
        scale = np.abs(A).max(axis=0)
        sol, *_ = np.linalg.lstsq(A / scale, b, rcond=None)
        return float(sol[0] / scale[0])

    v1, v2 = fit(T), fit(T // 2)
    return v1, abs(v1 - v2)


def euler_gamma(cfg: NumericConfig = NumericConfig()) -> Tuple[float, float]:
    """H_T - log T - 1/(2T) + 1/(12 T^2); the error is below 1/(120 T^4)."""
    T = cfg.terms
    n = np.arange(1, T + 1, dtype=_dtype(cfg))
    H = np.sum(1 / n)
    g = H - np.log(_dtype(cfg)(T)) - 1 / (2 * _dtype(cfg)(T)) + 1 / (12 * _dtype(cfg)(T) ** 2)
    eps = float(np.finfo(_dtype(cfg)).eps)
    return float(g), 1 / (120 * T ** 4) + T * eps * 20


def polylog(s: Sequence[int], z: float, cfg: NumericConfig = NumericConfig()) -> float:
    """Li_s(z) = sum_{n1 > ... > nr > 0} z^n1 / prod n_i^s_i for |z| < 1."""
    if abs(z) >= 1:
        raise ValueError("|z| must be < 1")
    s = tuple(int(x) for x in s)
    dt = _dtype(cfg)
    T = cfg.terms
    if z != 0:
        # enough terms for |z|^T to vanish in working precision
        need = int(math.ceil(cfg.precision * math.log(2) / -math.log(abs(z)))) + 10
        T = max(min(T, need), 10) if need < T else T
    n = np.arange(1, T + 1, dtype=dt)
    inner = np.ones(T, dtype=dt)
    for e in reversed(s[1:]):
        cum = np.cumsum(inner / n ** e)
        inner = np.concatenate(([dt(0)], cum[:-1]))
    zn = np.power(dt(z), n)
    return float(np.sum(zn * inner / n ** s[0]))


def harmonic(s: Sequence[int], n: int) -> Fraction:
    """H_s(n) = sum_{n >= n1 > ... > nr > 0} prod n_i^{-s_i}, exactly."""
    s = tuple(int(x) for x in s)
    acc = [Fraction(1)] * (n + 1)
    for e in reversed(s):
        new = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            new[m] = new[m - 1] + acc[m - 1] / Fraction(m) ** e
        acc = new
    return acc[n]


# ---------------------------------------------------------------------------
# relation checks

def y_to_index(w: Sequence[int]) -> Tuple[int, ...]:
    return tuple(w)


def x_to_index(w: Sequence[int]) -> Tuple[int, ...]:
    """x0^{s1-1} x1 ... x0^{sr-1} x1 -> (s1, ..., sr)."""
    out, run = [], 0
    for c in w:
        if c == 0:
            run += 1
        else:
            out.append(run + 1)
            run = 0
    if run:
        raise ValueError("word must end in x1")
    return tuple(out)


class _Values:
    def __init__(self, cfg: NumericConfig):
        self.cfg = cfg
        self.cache: Dict[Tuple[int, ...], Tuple[float, float]] = {}

    def index(self, s) -> Tuple[float, float]:
        if s not in self.cache:
            self.cache[s] = mzv_extrapolated(s, self.cfg)
        return self.cache[s]

    def symbol(self, sym: Symbol) -> Tuple[float, float]:
        from .bridge import basis_element

        poly = basis_element(sym)
        conv = x_to_index if sym.family == "X" else y_to_index
        val = err = 0.0
        for w, c in poly.terms.items():
            v, e = self.index(conv(w))
            val += float(c) * v
            err += abs(float(c)) * e
        return val, err

    def poly(self, p: SymPoly) -> Tuple[float, float]:
        total = err = 0.0
        for powers, c in p.items():
            term, rel = float(c), 0.0
            for sym, k in powers:
                if sym is GAMMA:
                    raise ValueError("gamma in a relation")
                v, e = self.symbol(sym)
                term *= v ** k
                rel += k * e / abs(v)
            total += term
            err += abs(term) * rel
        return total, err


@dataclass
class RuleCheck:
    side: str
    weight: int
    rule: str
    lhs: float
    rhs: float
    residual: float
    passed: bool


def validate_relations(report, cfg: NumericConfig = NumericConfig(), max_weight: int = 5,
                       rules=None) -> List[RuleCheck]:
    """Evaluate both sides of every rule of weight <= max_weight."""
    vals = _Values(cfg)
    out = []
    todo = rules if rules is not None else [
        r for side in ("Y", "X") for r in report.rules(side) if r.weight <= max_weight
    ]
    for r in todo:
        lhs, _ = vals.symbol(r.lhs)
        rhs, _ = vals.poly(r.rhs)
        res = abs(lhs - rhs)
        out.append(RuleCheck(r.side, r.weight, r.render(), lhs, rhs, res, res <= cfg.tol))
    return out


def abel_spotcheck(word: Sequence[int], z_grid: Sequence[float],
                   cfg: NumericConfig = NumericConfig()) -> dict:
    """Coefficient of a Y-word in exp(y1 log(1-z)) pi_Y(L(z)) on a grid.

    The coefficient is sum_k log(1-z)^k/k! Li_{w[k:]}(z) over the leading y1
    run of w; the limit estimate is a linear fit in (1-z) log(1-z) through
    the two points closest to 1, and ``target`` is the shuffle-regularized
    value (zero for y1, zeta(w) for convergent w).
    """
    w = tuple(word)
    lead = 0
    while lead < len(w) and w[lead] == 1:
        lead += 1
    values = []
    for z in z_grid:
        L = math.log1p(-z)
        acc = 0.0
        for k in range(lead + 1):
            rest = w[k:]
            li = 1.0 if not rest else polylog(rest, z, cfg)
            acc += L ** k / math.factorial(k) * li
        values.append(acc)
    if len(z_grid) >= 2:
        (z1, v1), (z2, v2) = sorted(zip(z_grid, values))[-2:]
        h = lambda z: (1 - z) * (1 - math.log1p(-z))
        slope = (v2 - v1) / (h(z2) - h(z1))
        limit = v2 - slope * h(z2)
    else:
        limit = values[-1]
    if w == (1,) or not w:
        target = 0.0 if w else 1.0
    elif w[0] >= 2:
        target = mzv_extrapolated(w, cfg)[0]
    else:
        target = None
    return {"word": list(w), "grid": list(z_grid), "values": values, "limit": limit,
            "target": target}
