"""Dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in ``0..p-1``.  Everything is
Gaussian elimination with vectorised row operations; the matrices handled by
the library are at most a few hundred rows, so nothing cleverer is needed.
"""

from __future__ import annotations

import numpy as np


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return np.mod(m, p)


def row_reduce(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` mod p and its pivot columns."""
    r = np.mod(np.array(a, dtype=np.int64), p)
    rows, cols = r.shape
    pivots: list[int] = []
    i = 0
    for j in range(cols):
        if i == rows:
            break
        nz = np.nonzero(r[i:, j])[0]
        if nz.size == 0:
            continue
        k = i + nz[0]
        if k != i:
            r[[i, k]] = r[[k, i]]
        inv = pow(int(r[i, j]), -1, p)
        r[i] = (r[i] * inv) % p
        col = r[:, j].copy()
        col[i] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(col[hit], r[i])) % p
        pivots.append(j)
        i += 1
    return r, pivots


def rank(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a x = 0}`` as the columns of an ``n x d`` matrix.

    The basis is the standard one read off the reduced echelon form: one
    vector per free column, in increasing column order.
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = row_reduce(a, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for c, f in enumerate(free):
        basis[f, c] = 1
        for i, pc in enumerate(pivots):
            basis[pc, c] = (-r[i, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a x = b`` (b may hold several columns), or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    m, n = a.shape
    if m == 0:
        x = np.zeros((n, b.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    aug = np.concatenate([a, b], axis=1)
    r, pivots = row_reduce(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x[:, 0] if vec else x


def independent_columns(a: np.ndarray, p: int) -> list[int]:
    """Indices of the greedy (left-to-right) maximal independent set of columns."""
    a = np.asarray(a)
    if a.size == 0:
        return []
    return row_reduce(a, p)[1]


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries < p and inner dimensions are small, so int64 cannot overflow
    return np.mod(np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64), p)
