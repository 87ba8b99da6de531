"""Dense exact linear algebra over an ordered field.

Vectors are tuples and matrices are lists of rows.  Entries may be ints,
Fractions or QuadScalars of a single quadratic field; every routine uses
exact zero tests only.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = list


def as_vector(v) -> Vector:
    return tuple(Fraction(x) if isinstance(x, int) else x for x in v)


def add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale(c, v) -> Vector:
    return tuple(c * a for a in v)


def dot(u, v):
    total = Fraction(0)
    for a, b in zip(u, v, strict=True):
        if a != 0 and b != 0:
            total = total + a * b
    return total


def matvec(M: Sequence[Sequence], v) -> Vector:
    return tuple(dot(row, v) for row in M)


def lincomb(coeffs, vectors: Sequence[Sequence]) -> Vector:
    """Sum of ``c_i * v_i``; ``vectors`` must be nonempty."""
    out = [Fraction(0)] * len(vectors[0])
    for c, v in zip(coeffs, vectors, strict=True):
        if c == 0:
            continue
        for i, a in enumerate(v):
            out[i] = out[i] + c * a
    return tuple(out)


def is_zero_vector(v) -> bool:
    return all(a == 0 for a in v)


def transpose(M: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def rref(M: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Zero rows are dropped."""
    R = [list(row) for row in M]
    if not R:
        return [], []
    n = len(R[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}.

    Each basis vector has a 1 in its own free column and 0 in the other free
    columns, which makes the basis canonical for a given row space.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(M[0])
    R, pivots = rref(M, ncols) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(M: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Vector | None:
    """One solution of ``M x = b`` (free variables set to zero), or None."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return tuple(Fraction(0) for _ in range(ncols))
    aug = [list(row) + [bi] for row, bi in zip(M, b, strict=True)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def row_space_basis(vectors: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """rref basis of the span of ``vectors`` with its pivot columns."""
    return rref(vectors)
