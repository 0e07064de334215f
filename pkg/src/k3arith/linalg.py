"""Exact linear algebra over Q or F_p on plain lists of lists.

Matrices are row-major lists; a ``field`` is any callable coercing ints
(``QQ`` or ``GF(p)``). Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction

from .scalar import QQ


def _zero(field):
    return field(0)


def rref(rows, field=QQ):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    m = [[field(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field=QQ) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, ncols: int | None = None, field=QQ):
    """Basis of {x : A x = 0} as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_zero(field)] * ncols
        v[f] = field(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(A, b, field=QQ):
    """One solution x of A x = b (free variables zero), or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [_zero(field)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return x


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), start=0 * row[0]) for col in Bt] for row in A]


def matvec(A, v):
    return [sum((a * b for a, b in zip(row, v)), start=0 * v[0]) for row in A]


def identity(n, field=QQ):
    return [[field(1) if i == j else field(0) for j in range(n)] for i in range(n)]


def determinant(A, field=QQ):
    m = [[field(x) for x in r] for r in A]
    n = len(m)
    det = field(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return field(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def inverse(A, field=QQ):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


# -- subspaces ---------------------------------------------------------------

def span_basis(vectors, field=QQ):
    """Canonical (RREF) basis of the span of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return []
    return rref(vectors, field)[0]


def contains(basis, v, field=QQ) -> bool:
    """Is v in the span of the rows of ``basis``?"""
    if not any(x != 0 for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v], field) == rank(basis, field)


def is_subspace(small, big, field=QQ) -> bool:
    if not small:
        return True
    return rank(list(big) + list(small), field) == rank(big, field) if big else rank(small, field) == 0


def same_subspace(a, b, field=QQ) -> bool:
    return span_basis(a, field) == span_basis(b, field)


class EchelonSpan:
    """Incrementally maintained row space; ``add`` reports whether v was new."""

    def __init__(self, ncols: int, field=QQ):
        self.ncols = ncols
        self.field = field
        self.rows: dict[int, list] = {}  # pivot column -> row with 1 at pivot

    def reduce(self, v):
        v = [self.field(x) for x in v]
        for p, row in self.rows.items():
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for q, row in self.rows.items():
            if row[p] != 0:
                f = row[p]
                self.rows[q] = [a - f * b for a, b in zip(row, v)]
        self.rows[p] = v
        return True

    def __contains__(self, v) -> bool:
        return not any(x != 0 for x in self.reduce(v))

    def __len__(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]


# -- symmetric forms -----------------------------------------------------------

def congruence_diagonal(S) -> list[Fraction]:
    """Diagonal of a rational symmetric matrix after congruence reduction.

    Exact pivoting: a zero diagonal pivot with a nonzero entry in its row is
    repaired by adding that row/column first.
    """
    m = [[Fraction(x) for x in r] for r in S]
    n = len(m)
    diag = []
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is not None:
                    # x_k <- x_k + x_j gives diagonal 2 m[k][j] + m[j][j] = 2 m[k][j]
                    m[k] = [a + b for a, b in zip(m[k], m[j])]
                    for row in m:
                        row[k] += row[j]
        p = m[k][k]
        diag.append(p)
        if p == 0:
            continue
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
        # restore symmetry by clearing column k below the pivot
        for i in range(k + 1, n):
            m[i][k] = Fraction(0)
            m[k][i] = Fraction(0)
    return diag


def inertia(S) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a rational symmetric matrix."""
    d = congruence_diagonal(S)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if x == 0))
