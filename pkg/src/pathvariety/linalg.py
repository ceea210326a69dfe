"""Exact rational elimination.

:class:`Echelon` keeps sparse rows (``{key: Fraction}``) in reduced row
echelon form: every row is monic at its pivot, which is the row's largest
key under ``order``, and no pivot key occurs in any other row.  Reducing a
vector is then a single pass over the pivots it touches.
"""

from __future__ import annotations

from fractions import Fraction


class Echelon:
    def __init__(self, order=None):
        self.order = order or (lambda k: k)
        self.rows: dict = {}  # pivot -> row

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        out = dict(vec)
        for p in [k for k in vec if k in self.rows]:
            c = out.get(p, 0)
            if not c:
                continue
            for k, a in self.rows[p].items():
                v = out.get(k, 0) - c * a
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def add(self, vec: dict):
        """Insert ``vec``; returns the new pivot, or None if ``vec`` was dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        p = max(r, key=self.order)
        inv = 1 / r[p]
        r = {k: a * inv for k, a in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, a in r.items():
                    v = row.get(k, 0) - c * a
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return p

    def coordinates(self, vec: dict):
        """Coefficients on the rows (by pivot) if ``vec`` lies in the span, else None."""
        if self.reduce(vec):
            return None
        return {p: vec.get(p, Fraction(0)) for p in self.rows}

    def sorted_pivots(self) -> list:
        return sorted(self.rows, key=self.order)


def rank(matrix) -> int:
    """Rank of a dense rational matrix by fraction-exact Gaussian elimination."""
    rows = [[Fraction(a) for a in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivot = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                f /= pivot
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r
