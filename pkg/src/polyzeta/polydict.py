"""Raw dict polynomials used on hot paths.

A polynomial is ``{monomial: coeff}`` with monomials as sorted tuples of
symbol ids (see :class:`polyzeta.ncalg.SymPoly`, which wraps the same data).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict

Poly = Dict[tuple, Fraction]

ONE: Poly = {(): Fraction(1)}


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def add_into(acc: Poly, p: Poly, scale=1) -> None:
    """acc += scale * p, in place."""
    if not scale:
        return
    for m, c in p.items():
        v = acc.get(m, 0) + c * scale
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def mul(a: Poly, b: Poly) -> Poly:
    if len(a) == 1 and () in a:
        s = a[()]
        return {m: c * s for m, c in b.items()}
    if len(b) == 1 and () in b:
        s = b[()]
        return {m: c * s for m, c in a.items()}
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def mul_into(acc: Poly, a: Poly, b: Poly, scale=1) -> None:
    for m1, c1 in a.items():
        c1s = c1 * scale
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            v = acc.get(m, 0) + c1s * c2
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)


def power(a: Poly, n: int) -> Poly:
    out = dict(ONE)
    for _ in range(n):
        out = mul(out, a)
    return out


def scale(a: Poly, s) -> Poly:
    if not s:
        return {}
    return {m: c * s for m, c in a.items()}


def substitute(p: Poly, images: Dict[int, Poly]) -> Poly:
    """Replace symbol ids by polynomials (ids absent from ``images`` stay)."""
    out: Poly = {}
    for m, c in p.items():
        if not any(i in images for i in m):
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
            continue
        term: Poly = {(): c}
        rest = []
        for i in m:
            img = images.get(i)
            if img is None:
                rest.append(i)
            else:
                term = mul(term, img)
        if rest:
            r = tuple(rest)
            term = {mono_mul(k, r): v for k, v in term.items()}
        add_into(out, term)
    return out
