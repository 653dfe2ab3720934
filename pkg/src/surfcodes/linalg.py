"""Exact dense linear algebra over F_q on int64 index arrays."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def _as_matrix(A) -> np.ndarray:
    A = np.array(A, dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :] if A.size else A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return A


def _eliminate(spec: FieldSpec, A: np.ndarray, reduced: bool):
    """Row-reduce a copy of A; returns (matrix, pivot columns)."""
    M = _as_matrix(A).copy()
    nr, nc = M.shape
    p = spec.p
    prime = spec.e == 1
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        piv = int(M[r, c])
        if piv != 1:
            M[r] = spec.mul_table[int(spec.inv_table[piv]), M[r]]
        targets = np.arange(nr) if reduced else np.arange(r + 1, nr)
        targets = targets[(targets != r) & (M[targets, c] != 0)]
        if targets.size:
            f = M[targets, c]
            if prime:
                M[targets] = (M[targets] - f[:, None] * M[r][None, :]) % p
            else:
                M[targets] = spec.sub_table[M[targets], spec.mul_table[f[:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(spec: FieldSpec, A) -> int:
    A = _as_matrix(A)
    if A.size == 0:
        return 0
    return len(_eliminate(spec, A, reduced=False)[1])


def rref(spec: FieldSpec, A) -> np.ndarray:
    """Reduced row-echelon form with zero rows removed."""
    A = _as_matrix(A)
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
    M, piv = _eliminate(spec, A, reduced=True)
    return M[: len(piv)]


def nullspace(spec: FieldSpec, A) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}, in the standard free-variable form."""
    A = _as_matrix(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    M, piv = _eliminate(spec, A, reduced=True)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = spec.neg_table[M[r, fcol]]
    return basis


def solve(spec: FieldSpec, A, b):
    """One solution x of A x = b, or None when the system is inconsistent."""
    A = _as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.shape[0] != b.size:
        raise ValueError("shape mismatch")
    aug = np.hstack([A, b[:, None]])
    M, piv = _eliminate(spec, aug, reduced=True)
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = M[r, n]
    return x


def matmul(spec: FieldSpec, A, B) -> np.ndarray:
    A = _as_matrix(A)
    B = _as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError("shape mismatch")
    if spec.e == 1:
        return (A @ B) % spec.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = spec.add_table[out, spec.mul_table[A[:, k][:, None], B[k][None, :]]]
    return out


def row_space_contains(spec: FieldSpec, A, B) -> bool:
    """Whether every row of B lies in the row space of A."""
    A, B = _as_matrix(A), _as_matrix(B)
    if B.size == 0:
        return True
    if A.size == 0:
        return not B.any()
    if A.shape[1] != B.shape[1]:
        raise ValueError("shape mismatch")
    return rank(spec, np.vstack([A, B])) == rank(spec, A)


def row_space_equal(spec: FieldSpec, A, B) -> bool:
    return row_space_contains(spec, A, B) and row_space_contains(spec, B, A)
