"""Exact sparse Gaussian elimination over Q (rows are dicts column -> value)."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional

Row = Dict[Hashable, Fraction]


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``priority`` maps a column to a sort key; the pivot of a new row is its
    column with the smallest key, so low keys are eliminated first.
    """

    def __init__(self, priority: Optional[Callable[[Hashable], object]] = None):
        self.priority = priority or (lambda c: c)
        self.pivots: Dict[Hashable, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = {c: v for c, v in row.items() if v}
        pivots = self.pivots
        todo = [c for c in row if c in pivots]
        while todo:
            c = todo.pop()
            f = row.get(c)
            if not f:
                continue
            for k, v in pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    if k not in row and k in pivots:
                        todo.append(k)
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: Row) -> Optional[Hashable]:
        """Insert a row; returns the new pivot column, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        p = min(row, key=self.priority)
        inv = 1 / Fraction(row[p])
        row = {c: v * inv for c, v in row.items()}
        # keep the echelon fully reduced
        for q, other in self.pivots.items():
            f = other.get(p)
            if f:
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        self.pivots[p] = row
        return p

    def rank(self) -> int:
        return len(self.pivots)


def inverse(rows: List[Row], n: int) -> List[Row]:
    """Inverse of a square matrix given by sparse rows over columns 0..n-1."""
    ech = Echelon(priority=lambda c: (c[0] != "a", c[1]))
    for i, r in enumerate(rows):
        aug = {("a", j): Fraction(v) for j, v in r.items()}
        aug[("b", i)] = Fraction(1)
        ech.add(aug)
    out: List[Row] = []
    for i in range(n):
        piv = ech.pivots.get(("a", i))
        if piv is None or any(k[0] == "a" and k != ("a", i) for k in piv):
            raise ZeroDivisionError("singular matrix")
        out.append({k[1]: v for k, v in piv.items() if k[0] == "b"})
    return out
