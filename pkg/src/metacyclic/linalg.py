"""Dense linear algebra over small finite fields.

Matrices hold integer element codes (see :mod:`metacyclic.gf`).  Every
function takes the field ``F`` first; only its lookup tables (``add``,
``sub``, ``mul``, ``neg``, ``inv``) and, for products, its digit expansion
(``p``, ``D``, ``digits``, ``mt``) are used.
"""

from __future__ import annotations

import numpy as np


def as_matrix(A, ncols: int | None = None) -> np.ndarray:
    M = np.asarray(A, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size else np.zeros((0, ncols or 0), dtype=np.int64)
    if M.size == 0 and ncols is not None:
        M = M.reshape(0, ncols)
    return M


def rref(F, A, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    M = as_matrix(A, ncols).copy()
    rows, cols = M.shape
    r = c = 0
    prime = F.D == 1
    pivots: list[int] = []
    while r < rows and c < cols:
        live = M[r:, c:].any(axis=0)
        step = int(live.argmax())
        if not live[step]:
            break
        c += step
        piv = r + int((M[r:, c] != 0).argmax())
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        lead = M[r, c]
        if lead != 1:
            M[r] = F.mul[F.inv[lead], M[r]]
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            if prime:
                M[hit] = (M[hit] - col[hit, None] * M[r]) % F.p
            else:
                M[hit] = F.sub[M[hit], F.mul[col[hit, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
        c += 1
    return M[:r], pivots


def rank(F, A) -> int:
    M = as_matrix(A)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_space(F, A, ncols: int | None = None) -> np.ndarray:
    """Canonical basis (RREF) of the row space."""
    return rref(F, A, ncols)[0]


def nullspace(F, A, ncols: int | None = None) -> np.ndarray:
    """Basis (rows) of ``{x : A x^T = 0}``."""
    M = as_matrix(A, ncols)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=np.int64)
    for t, fc in enumerate(free):
        N[t, fc] = 1
        for i, pc in enumerate(piv):
            N[t, pc] = F.neg[R[i, fc]]
    return N


def matmul(F, A, B) -> np.ndarray:
    """Product of two code matrices over F."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.D == 1:
        return (A @ B) % F.p
    Ad = F.digits[A]
    Bd = F.digits[B]
    out = np.zeros(A.shape[:-1] + B.shape[1:] + (F.D,), dtype=np.int64)
    for a in range(F.D):
        for b in range(F.D):
            prod = Ad[..., a] @ Bd[..., b]
            out += prod[..., None] * F.mt[a, b]
    return F.from_digits(out % F.p)


def fp_expand(F, M) -> np.ndarray:
    """F_p matrix of the F_q-linear map ``x -> x @ M`` acting on digit vectors."""
    M = np.asarray(M, dtype=np.int64)
    a, b = M.shape
    s = F.D
    out = np.zeros((a * s, b * s), dtype=np.int64)
    for i in range(s):
        e = np.zeros(s, dtype=np.int64)
        e[i] = 1
        gi = F.from_digits(e)
        img = F.digits[F.mul[gi, M]]  # (a, b, s)
        out[i::s, :] = img.reshape(a, b * s)
    return out


def in_span(F, basis, v) -> bool:
    B = as_matrix(basis, len(v))
    return rank(F, np.vstack([B, np.asarray(v, dtype=np.int64)[None, :]])) == rank(F, B)


def _rref_pivots(U) -> list[int] | None:
    """Pivot columns if U is already in reduced row echelon form."""
    piv = [int(np.flatnonzero(row)[0]) if row.any() else -1 for row in U]
    if -1 in piv or piv != sorted(set(piv)):
        return None
    if not np.array_equal(U[:, piv], np.eye(len(piv), dtype=U.dtype)):
        return None
    return piv


def contains(F, U, W) -> bool:
    """True if rowspace(W) is contained in rowspace(U)."""
    U = as_matrix(U)
    W = as_matrix(W, U.shape[1])
    if W.shape[0] == 0:
        return True
    if U.shape[0] == 0:
        return not W.any()
    piv = _rref_pivots(U)
    if piv is not None:
        # subtract the pivot-column combination; anything left is outside
        return not F.sub[W, matmul(F, W[:, piv], U)].any()
    return rank(F, np.vstack([U, W])) == rank(F, U)


def same_space(F, U, W) -> bool:
    U = row_space(F, U)
    W = row_space(F, W, U.shape[1])
    return U.shape == W.shape and bool(np.array_equal(U, W))


def intersect(F, U, W) -> np.ndarray:
    """RREF basis of rowspace(U) ∩ rowspace(W)."""
    U = row_space(F, U)
    W = row_space(F, W, U.shape[1])
    cols = U.shape[1]
    if U.shape[0] == 0 or W.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64)
    M = np.vstack([U, W])
    Z = nullspace(F, M.T)
    if Z.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.int64)
    X = matmul(F, Z[:, : U.shape[0]], U)
    return row_space(F, X, cols)


def solve_left(F, A, B) -> np.ndarray:
    """Return X with ``X @ A = B`` (A must have full row rank)."""
    A = as_matrix(A)
    B = as_matrix(B, A.shape[1])
    k = A.shape[0]
    aug = np.hstack([A.T, B.T])  # columns: unknowns then rhs
    R, piv = rref(F, aug)
    if any(pc >= k for pc in piv):
        raise ValueError("system has no solution")
    X = np.zeros((B.shape[0], k), dtype=np.int64)
    for i, pc in enumerate(piv):
        X[:, pc] = R[i, k:]
    return X


def inverse(F, A) -> np.ndarray:
    A = as_matrix(A)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        raise ValueError("matrix is singular")
    return R[:, n:]
