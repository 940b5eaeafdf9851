"""Dense exact linear algebra over any exact scalar type.

Everything here works uniformly for Fraction entries and for FieldElement
entries; a scalar only needs +, -, *, /, == and truthiness.  Matrices are
lists of row lists and are consumed destructively unless noted.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows, ncols):
    """Reduce rows in place to reduced row echelon form.

    Returns the list of pivot column indices, one per surviving nonzero row
    (rows are reordered; zero rows sink to the bottom).
    """
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri, rr = rows[i], rows[r]
                rows[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows, ncols):
    work = [list(r) for r in rows]
    return len(rref(work, ncols))


def solve(rows, rhs, ncols, zero=ZERO):
    """One exact solution of A x = b, or None if the system is inconsistent.

    ``rows`` are the rows of A (length ncols each), ``rhs`` the right-hand
    side entries.  Free variables are set to zero.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = rref(aug, ncols)
    for i in range(len(pivots), len(aug)):
        if aug[i][ncols]:
            return None
    sol = [zero] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return sol


def nullspace(rows, ncols, zero=ZERO, one=ONE):
    """Basis of the right kernel of A, one vector per free column."""
    work = [list(r) for r in rows]
    pivots = rref(work, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for i, c in enumerate(pivots):
            v[c] = -work[i][free]
        basis.append(v)
    return basis


class Span:
    """An incrementally grown row space kept in reduced echelon form."""

    def __init__(self, ncols, zero=ZERO):
        self.ncols = ncols
        self.zero = zero
        self.rows = []   # kept sorted by pivot column
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residual of vec modulo the current span (a fresh list)."""
        v = list(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                for j in range(p, self.ncols):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, vec):
        return not any(self.reduce(vec))

    def add(self, vec):
        """Add a vector; returns True if it enlarged the span."""
        v = self.reduce(vec)
        p = None
        for j, c in enumerate(v):
            if c:
                p = j
                break
        if p is None:
            return False
        piv = v[p]
        if piv != 1:
            inv = 1 / piv
            v = [x * inv for x in v]
        for i, (q, row) in enumerate(zip(self.pivots, self.rows)):
            c = row[p]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < p:
            at += 1
        self.pivots.insert(at, p)
        self.rows.insert(at, v)
        return True

    def basis(self):
        return [list(r) for r in self.rows]
