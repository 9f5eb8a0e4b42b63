"""Dense matrices over any exact field, as tuples of row tuples."""
from __future__ import annotations

from typing import Sequence

Matrix = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(ring, n: int) -> Matrix:
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))


def zeros(ring, n: int, m: int | None = None) -> Matrix:
    return tuple(tuple(ring.zero for _ in range(m or n)) for _ in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        r = []
        for col in Bt:
            acc = None
            for a, b in zip(row, col):
                if a and b:
                    acc = a * b if acc is None else acc + a * b
            r.append(acc if acc is not None else row[0] * 0 if row else 0)
        out.append(tuple(r))
    return tuple(out)


def matvec(A: Matrix, v: Sequence):
    out = []
    for row in A:
        acc = None
        for a, b in zip(row, v):
            t = a * b
            acc = t if acc is None else acc + t
        out.append(acc)
    return tuple(out)


def madd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def msub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def mscale(A: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in r) for r in A)


def mmap(A: Matrix, f) -> Matrix:
    return tuple(tuple(f(a) for a in r) for r in A)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(a == b for r, s in zip(A, B) for a, b in zip(r, s))


def is_identity(A: Matrix) -> bool:
    n = len(A)
    return all((A[i][j] == 1) if i == j else (not A[i][j]) for i in range(n) for j in range(n))


def _echelon(A: Matrix):
    """Row echelon form by Gaussian elimination; returns (rows, pivots, det factor)."""
    M = [list(r) for r in A]
    nrows, ncols = len(M), len(M[0]) if M else 0
    pivots = []
    sign = 1
    det = None
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        det = piv if det is None else det * piv
        inv = 1 / piv if not hasattr(piv, "inverse") else piv.inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots, sign, det


def det(A: Matrix):
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = A
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    M, pivots, sign, d = _echelon(A)
    if len(pivots) < n:
        return A[0][0] * 0
    return d if sign == 1 else -d


def rank(A: Matrix) -> int:
    return len(_echelon(A)[1])


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    one = _one_of(A)
    zero = one * 0
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    M, pivots, _, _ = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in M)


def _one_of(A):
    for r in A:
        for x in r:
            if hasattr(x, "field") and hasattr(x.field, "one"):
                return x.field.one
            if hasattr(x, "parent"):
                return x.parent.one
    return 1


def nullspace(A: Matrix) -> list[tuple]:
    """Basis of {v : A v = 0}."""
    if not A:
        return []
    ncols = len(A[0])
    M, pivots, _, _ = _echelon(A)
    one = _one_of(A)
    zero = one * 0
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(M, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(A: Matrix, b: Sequence):
    """One solution of A x = b, or None."""
    n = len(A[0])
    aug = tuple(tuple(r) + (bb,) for r, bb in zip(A, b))
    M, pivots, _, _ = _echelon(aug)
    if n in pivots:
        return None
    zero = _one_of(A) * 0
    x = [zero] * n
    for row, pc in zip(M, pivots):
        x[pc] = row[n]
    return tuple(x)


def pgl_equal(M: Matrix, N: Matrix) -> bool:
    """M = cN for a nonzero scalar c, via a_i b_j = a_j b_i (no division)."""
    a = [x for r in M for x in r]
    b = [x for r in N for x in r]
    if len(a) != len(b):
        return False
    if not any(a) or not any(b):
        return not any(a) and not any(b)
    for i in range(len(a)):
        if bool(a[i]) != bool(b[i]):
            return False
    # compare against one reference pair to keep it linear
    k = next(i for i in range(len(a)) if a[i])
    return all(a[i] * b[k] == a[k] * b[i] for i in range(len(a)))
