"""Alphabets, words, gradings and Lyndon-word machinery.

Words are plain tuples of non-negative integers.  The alphabet travels
separately (usually on the polynomial holding the word):

* ``X``  letters 0, 1 standing for x0 < x1; the grade is the length.
* ``Y``  letters k >= 1 standing for y_k, ordered y1 > y2 > ...; the grade
  is the weight (sum of indices).
* ``Y0`` like ``Y`` but y0 is allowed (negative-index encodings).

Lexicographic comparison is done through :meth:`Alphabet.key`, which maps
a word to a tuple whose natural Python order is the word order.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Optional

Word = tuple  # tuple[int, ...]

EMPTY: Word = ()


class Alphabet:
    __slots__ = ("name", "min_index", "max_index", "by_weight")

    def __init__(self, name: str, min_index: int, max_index: Optional[int], by_weight: bool):
        self.name = name
        self.min_index = min_index
        self.max_index = max_index
        self.by_weight = by_weight

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (alphabet, (self.name,))

    # -- letters -------------------------------------------------------
    def check_letter(self, k: int) -> None:
        if not isinstance(k, int) or k < self.min_index or (
            self.max_index is not None and k > self.max_index
        ):
            raise ValueError(f"letter index {k!r} is not legal in alphabet {self.name}")

    def check(self, w: Word) -> Word:
        for k in w:
            self.check_letter(k)
        return w

    # -- gradings ------------------------------------------------------
    def grade(self, w: Word) -> int:
        return sum(w) if self.by_weight else len(w)

    def key(self, w: Word) -> tuple:
        # Y is ordered y1 > y2 > ..., so negate indices.
        if self.name == "X":
            return w
        return tuple(-k for k in w)

    def letter_key(self, k: int) -> int:
        return k if self.name == "X" else -k

    # -- text ----------------------------------------------------------
    def parse(self, text: str) -> Word:
        text = text.strip()
        if text in ("e", "1", ""):
            return EMPTY
        if self.name == "X":
            if any(c not in "01" for c in text):
                raise ValueError(f"X-word must be a string over 0/1, got {text!r}")
            return tuple(int(c) for c in text)
        parts = text.replace(",", " ").split()
        try:
            w = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"{self.name}-word must be space separated integers, got {text!r}")
        return self.check(w)

    def format(self, w: Word) -> str:
        if not w:
            return "e"
        if self.name == "X":
            return "".join(str(k) for k in w)
        return " ".join(str(k) for k in w)

    def letter_name(self, k: int) -> str:
        return f"x{k}" if self.name == "X" else f"y{k}"

    def pretty(self, w: Word, sep: str = "") -> str:
        """``x0x1x1`` / ``y2y1`` style; ``sep`` goes between letters."""
        if not w:
            return "1"
        return sep.join(self.letter_name(k) for k in w)

    # -- enumeration ---------------------------------------------------
    def words(self, grade: int) -> Iterator[Word]:
        """All words of exactly the given grade, in increasing word order."""
        if self.name == "X":
            yield from product((0, 1), repeat=grade)
            return
        if self.name == "Y0":
            raise ValueError("Y0 has infinitely many words of a given weight")
        out = sorted(compositions(grade), key=self.key)
        yield from out

    def words_upto(self, grade: int) -> Iterator[Word]:
        for g in range(grade + 1):
            yield from self.words(g)


X = Alphabet("X", 0, 1, by_weight=False)
Y = Alphabet("Y", 1, None, by_weight=True)
Y0 = Alphabet("Y0", 0, None, by_weight=True)
_ALPHABETS = {"X": X, "Y": Y, "Y0": Y0}


def alphabet(name) -> Alphabet:
    if isinstance(name, Alphabet):
        return name
    try:
        return _ALPHABETS[str(name).upper()]
    except KeyError:
        raise ValueError(f"unknown alphabet {name!r}; expected X, Y or Y0")


@lru_cache(maxsize=None)
def _compositions_cached(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in _compositions_cached(n - first):
            out.append((first,) + rest)
    return tuple(out)


def compositions(n: int) -> tuple:
    """Compositions of n into positive parts (the Y-words of weight n)."""
    return _compositions_cached(n)


# ---------------------------------------------------------------------------
# Lyndon words

def _duval(key: tuple) -> list:
    """Chen-Fox-Lyndon factorization of a key sequence, returns cut points."""
    n = len(key)
    i = 0
    cuts = []
    while i < n:
        j, k = i + 1, i
        while j < n and key[k] <= key[j]:
            k = i if key[k] < key[j] else k + 1
            j += 1
        while i <= k:
            cuts.append((i, i + j - k))
            i += j - k
    return cuts


def is_lyndon(w: Word, alpha: Alphabet) -> bool:
    if not w:
        return False
    key = alpha.key(w)
    cuts = _duval(key)
    return len(cuts) == 1


def lyndon_factorization(w: Word, alpha: Alphabet) -> list:
    """Decreasing Lyndon factorization as ``[(lyndon_word, multiplicity), ...]``."""
    cuts = _duval(alpha.key(w))
    out: list = []
    for a, b in cuts:
        f = w[a:b]
        if out and out[-1][0] == f:
            out[-1] = (f, out[-1][1] + 1)
        else:
            out.append((f, 1))
    return out


def standard_factorization(l: Word, alpha: Alphabet) -> tuple:
    """Split a Lyndon word as (l1, l2) with l2 its longest proper Lyndon suffix."""
    if len(l) < 2:
        raise ValueError("standard factorization needs a Lyndon word of length >= 2")
    if not is_lyndon(l, alpha):
        raise ValueError(f"{alpha.pretty(l)} is not a Lyndon word")
    return _std_fact(l, alpha.name)


@lru_cache(maxsize=None)
def _std_fact(l: Word, name: str) -> tuple:
    alpha = _ALPHABETS[name]
    for i in range(1, len(l)):
        if is_lyndon(l[i:], alpha):
            return l[:i], l[i:]
    raise AssertionError("unreachable for a Lyndon word")


def _duval_successors(n: int) -> Iterator[Word]:
    """Lyndon words over {0,1} of length <= n in increasing order (Duval)."""
    w = [-1]
    while True:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == 1:
            w.pop()
        if not w:
            return


def lyndon_words(alpha, grade_bound: int) -> list:
    """Lyndon words of grade 1..grade_bound, in increasing Lyndon order."""
    alpha = alphabet(alpha)
    if grade_bound < 1:
        return []
    return list(_lyndon_cached(alpha.name, grade_bound))


@lru_cache(maxsize=None)
def _lyndon_cached(name: str, n: int) -> tuple:
    alpha = _ALPHABETS[name]
    if name == "X":
        return tuple(_duval_successors(n))
    out = []
    lo = 1 if name == "Y" else 0
    for g in range(1, n + 1):
        for w in compositions(g):
            if is_lyndon(w, alpha):
                out.append(w)
    if lo == 0:
        out.append((0,))
    out.sort(key=alpha.key)
    return tuple(out)


def lyndon_of_grade(alpha, grade: int) -> list:
    alpha = alphabet(alpha)
    return [l for l in lyndon_words(alpha, grade) if alpha.grade(l) == grade]


# ---------------------------------------------------------------------------
# letter codings

def pi_X(w: Word) -> Word:
    """y_{s1}...y_{sr} -> x0^{s1-1}x1 ... x0^{sr-1}x1."""
    out: list = []
    for s in w:
        if s < 1:
            raise ValueError("pi_X is defined on Y-words (indices >= 1)")
        out.extend((0,) * (s - 1))
        out.append(1)
    return tuple(out)


def pi_Y(w: Word) -> Optional[Word]:
    """Inverse of pi_X on words ending in x1 (and the empty word); None otherwise."""
    if not w:
        return EMPTY
    if w[-1] != 1:
        return None
    out = []
    run = 0
    for c in w:
        if c == 0:
            run += 1
        else:
            out.append(run + 1)
            run = 0
    return tuple(out)


code_piX = pi_X
code_piY = pi_Y
