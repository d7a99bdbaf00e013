"""Exact linear algebra on sparse vectors.

Vectors are dicts ``column -> coefficient``.  Coefficients are
:class:`fractions.Fraction` (``p=None``) or integers reduced mod a prime
``p``.  Columns only need to be mutually comparable; the pivot of a row is
its smallest column, so the columns left without a pivot span a
complement that respects the column order.
"""

from __future__ import annotations

import heapq
from fractions import Fraction


class Echelon:
    """Echelon basis of a growing subspace."""

    def __init__(self, p: int | None = None):
        self.p = p
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def _norm(self, c):
        return c % self.p if self.p else c

    def _inv(self, c):
        return pow(c, self.p - 2, self.p) if self.p else 1 / Fraction(c)

    def reduce(self, vec: dict) -> dict:
        """Eliminate every pivot column from ``vec`` (returns a new dict)."""
        v = {}
        for col, c in vec.items():
            c = self._norm(c)
            if c:
                v[col] = c
        heap = list(v)
        heapq.heapify(heap)
        last = None
        while heap:
            col = heapq.heappop(heap)
            if col == last:
                continue
            last = col
            c = v.get(col)
            row = self.rows.get(col)
            if not c or row is None:
                continue
            for k, r in row.items():
                new = self._norm(v.get(k, 0) - c * r)
                if new:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = new
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict):
        """Insert ``vec``; returns its reduced form, empty if dependent."""
        v = self.reduce(vec)
        if v:
            pivot = min(v)
            inv = self._inv(v[pivot])
            self.rows[pivot] = {k: self._norm(c * inv) for k, c in v.items()}
        return v


def rank(vectors, p: int | None = None) -> int:
    e = Echelon(p)
    for v in vectors:
        e.add(v)
    return len(e)


def solve_rational(mat, rhs):
    """Solve ``mat x = rhs`` exactly.

    Returns the unique solution as a list of Fractions, ``None`` if the
    system is inconsistent, or ``"singular"`` if it has many solutions.
    """
    n = len(mat)
    m = len(mat[0]) if n else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    pivots = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
    if any(a[i][m] != 0 for i in range(r, n)):
        return None
    if r < m:
        return "singular"
    x = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        x[col] = a[i][m]
    return x
