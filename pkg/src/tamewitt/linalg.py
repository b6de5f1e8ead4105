"""Exact dense linear algebra over a field backend.

Matrices are lists of rows; vectors are lists.  Nothing here is clever:
Gaussian elimination with the first available pivot.
"""
from __future__ import annotations


class SingularMatrix(ValueError):
    pass


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def zeros(F, r, c):
    return [[F.zero] * c for _ in range(r)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(F, A, B):
    Bt = transpose(B)
    return [[F.sum(F.mul(a, b) for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(F, A, x):
    return [F.sum(F.mul(a, b) for a, b in zip(row, x)) for row in A]


def columns(M):
    return transpose(M)


def from_columns(cols):
    return transpose(cols)


def dot(F, x, y):
    return F.sum(F.mul(a, b) for a, b in zip(x, y))


def vec_add(F, x, y):
    return [F.add(a, b) for a, b in zip(x, y)]


def vec_sub(F, x, y):
    return [F.sub(a, b) for a, b in zip(x, y)]


def vec_scale(F, c, x):
    return [F.mul(c, a) for a in x]


def row_echelon(F, M):
    """Reduced row echelon form; returns (R, pivot columns)."""
    R = [list(r) for r in M]
    pivots = []
    row = 0
    ncols = len(R[0]) if R else 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(R)) if not F.is_zero(R[i][col])), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        inv = F.inv(R[row][col])
        R[row] = [F.mul(inv, a) for a in R[row]]
        for i in range(len(R)):
            if i != row and not F.is_zero(R[i][col]):
                c = R[i][col]
                R[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(R[i], R[row])]
        pivots.append(col)
        row += 1
        if row == len(R):
            break
    return R, pivots


def rank(F, M):
    if not M:
        return 0
    return len(row_echelon(F, M)[1])


def solve(F, A, b):
    """The unique solution of A x = b for square invertible A."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = row_echelon(F, aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        raise SingularMatrix("system is singular or inconsistent")
    return [R[i][n] for i in range(n)]


def inverse(F, A):
    n = len(A)
    aug = [list(A[i]) + identity(F, n)[i] for i in range(n)]
    R, piv = row_echelon(F, aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in R]


def det(F, A):
    n = len(A)
    M = [list(r) for r in A]
    d = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if not F.is_zero(M[i][col])), None)
        if piv is None:
            return F.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            d = F.neg(d)
        d = F.mul(d, M[col][col])
        inv = F.inv(M[col][col])
        for i in range(col + 1, n):
            if not F.is_zero(M[i][col]):
                c = F.mul(M[i][col], inv)
                M[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(M[i], M[col])]
    return d


def nullspace(F, M):
    """Basis of {x : M x = 0} as a list of vectors."""
    if not M:
        return []
    ncols = len(M[0])
    R, piv = row_echelon(F, M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for i, p in enumerate(piv):
            x[p] = F.neg(R[i][f])
        basis.append(x)
    return basis


def affine_solutions(F, A, b, ncols: int):
    """(particular solution, nullspace basis) of A x = b, or None if inconsistent."""
    if not A:
        return [F.zero] * ncols, identity(F, ncols)
    R, piv = row_echelon(F, [list(r) + [c] for r, c in zip(A, b)])
    if ncols in piv:
        return None
    x = [F.zero] * ncols
    for i, p in enumerate(piv):
        x[p] = R[i][ncols]
    return x, nullspace(F, A)


def independent_subset(F, vectors):
    """Indices of a maximal independent subset, greedy in order."""
    chosen, rows = [], []
    for i, v in enumerate(vectors):
        if rank(F, rows + [list(v)]) > len(rows):
            rows.append(list(v))
            chosen.append(i)
    return chosen
