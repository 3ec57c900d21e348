"""Dense linear algebra over a prime field F_p on int64 numpy arrays."""
from __future__ import annotations

import numpy as np


def as_fp(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = as_fp(A, p).copy()
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Columns form a basis of {x : A x = 0}."""
    A = as_fp(A, p)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        N[f, k] = 1
        for i, pc in enumerate(piv):
            N[pc, k] = (-R[i, f]) % p
    return N


def solve(A, b, p: int) -> np.ndarray | None:
    """Some x with A x = b, or None."""
    A = as_fp(A, p)
    b = as_fp(b, p).reshape(-1, 1)
    rows, cols = A.shape
    R, piv = rref(np.hstack([A, b]), p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x


def matmul(A, B, p: int) -> np.ndarray:
    return (as_fp(A, p) @ as_fp(B, p)) % p


def matpow(A, k: int, p: int) -> np.ndarray:
    A = as_fp(A, p)
    out = np.eye(A.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            out = matmul(out, A, p)
        A = matmul(A, A, p)
        k >>= 1
    return out


def inverse(A, p: int) -> np.ndarray:
    A = as_fp(A, p)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]
