"""Dense exact linear algebra over a Field on numpy int64 arrays.

Arrays carry a trailing axis of length field.k holding coefficient vectors
over F_p (low degree first).  All kernels reduce mod p and mod the field
modulus; elimination is vectorized over rows so that desk-scale systems
(a few thousand rows) stay fast in pure numpy.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch
from .exactfield import Field, Scalar


def asarray(field: Field, data) -> np.ndarray:
    """Coerce nested data (ints, coeff lists, or Scalars) to a (... , k) array."""
    if isinstance(data, np.ndarray) and data.dtype == np.int64:
        if data.shape[-1:] == (field.k,):
            return data % field.p
    def conv(x):
        if isinstance(x, Scalar):
            return list(x.coeffs)
        if isinstance(x, (int, np.integer)):
            return [int(x)] + [0] * (field.k - 1)
        x = list(x)
        if len(x) == field.k and all(isinstance(y, (int, np.integer)) for y in x):
            return [int(y) for y in x]  # an explicit coefficient vector
        return [conv(y) for y in x]
    arr = np.array(conv(data), dtype=np.int64)
    if arr.shape[-1] != field.k:
        raise ShapeMismatch(f"trailing axis {arr.shape[-1]} != field degree {field.k}")
    return arr % field.p


def zeros(field: Field, shape) -> np.ndarray:
    return np.zeros(tuple(shape) + (field.k,), dtype=np.int64)


def unit_scalar(field: Field, value=1) -> np.ndarray:
    out = np.zeros(field.k, dtype=np.int64)
    out[0] = int(value) % field.p
    return out


def scalar_of(field: Field, arr) -> Scalar:
    return Scalar(field, tuple(int(c) for c in np.asarray(arr)))


def to_scalars(field: Field, arr):
    """Convert the last axis of arr into Scalar objects (nested lists)."""
    arr = np.asarray(arr)
    if arr.ndim == 1:
        return scalar_of(field, arr)
    return [to_scalars(field, sub) for sub in arr]


def is_zero(arr) -> bool:
    return not np.any(arr)


def fneg(field: Field, a):
    return (-a) % field.p


def fadd(field: Field, a, b):
    return (a + b) % field.p


def fsub(field: Field, a, b):
    return (a - b) % field.p


def fmul(field: Field, a, b):
    """Elementwise field product of broadcastable coefficient arrays."""
    p, k = field.p, field.k
    if k == 1:
        return (a * b) % p
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    full = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
    for i in range(k):
        full[..., i:i + k] += a[..., i, None] * b
    return np.tensordot(full % p, field._red, axes=([-1], [0])) % p


def fmatmul(field: Field, A, B):
    """Matrix product: A (m, r, k) @ B (r, n, k) -> (m, n, k)."""
    p, k = field.p, field.k
    if k == 1:
        return _imatmul(A[..., 0], B[..., 0], p)[..., None]
    m, r = A.shape[0], A.shape[1]
    n = B.shape[1]
    full = np.zeros((m, n, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            full[:, :, i + j] += _imatmul(A[:, :, i], B[:, :, j], p)
    return np.tensordot(full % p, field._red, axes=([-1], [0])) % p


def _imatmul(a, b, p):
    """Exact integer matmul mod p; uses float64 BLAS when bounds are safe."""
    inner = a.shape[-1]
    # the float64 BLAS path wins only on large products; small integer
    # matmuls are exact and avoid the conversion overhead
    if a.size * b.shape[-1] > 32768 and inner * (p - 1) * (p - 1) < 2 ** 52:
        c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    else:
        c = a @ b
    return c % p


def scalar_inv(field: Field, a) -> np.ndarray:
    return np.array(field.cinv(tuple(int(c) for c in a)), dtype=np.int64)


def _outer(field: Field, col, row):
    """col (m, k) x row (n, k) -> (m, n, k) of field products."""
    return fmul(field, col[:, None, :], row[None, :, :])


def rref(field: Field, M: np.ndarray):
    """Reduced row echelon form of M (m, n, k).  Returns (R, pivot_columns)."""
    p = field.p
    M = M.copy() % p
    m, n = M.shape[0], M.shape[1]
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.any(M[r:, c, :], axis=1)
        idx = np.flatnonzero(nz)
        if idx.size == 0:
            continue
        i = r + int(idx[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = scalar_inv(field, M[r, c])
        M[r] = fmul(field, M[r], inv[None, :])
        factors = M[:, c, :].copy()
        factors[r] = 0
        M = (M - _outer(field, factors, M[r])) % p
        pivots.append(c)
        r += 1
    # drop zero rows
    nz_rows = np.any(M.reshape(m, -1), axis=1)
    keep = np.flatnonzero(nz_rows)
    R = M[: len(pivots)] if np.all(nz_rows[: len(pivots)]) else M[keep]
    return R, pivots


def rank(field: Field, M: np.ndarray) -> int:
    return len(rref(field, M)[1])


def nullspace(field: Field, M: np.ndarray) -> np.ndarray:
    """RREF basis (d, n, k) of {x : M @ x = 0} with M of shape (m, n, k),
    treating x as a column vector."""
    p = field.p
    R, pivots = rref(field, M)
    m, n = M.shape[0], M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(field, (len(free), n))
    for idx, c in enumerate(free):
        basis[idx, c, 0] = 1
        for rrow, pc in enumerate(pivots):
            basis[idx, pc] = (-R[rrow, c]) % p
    if len(free):
        basis, _ = rref(field, basis)
    return basis


def row_space(field: Field, M: np.ndarray) -> np.ndarray:
    return rref(field, M)[0]


def solve(field: Field, M: np.ndarray, b: np.ndarray):
    """One solution x of M (m,n,k) @ x = b (m,k) treating x as a column, or
    None if inconsistent."""
    aug = np.concatenate([M, b[:, None, :]], axis=1)
    R, pivots = rref(field, aug)
    n = M.shape[1]
    if n in pivots:
        return None
    x = zeros(field, (n,))
    for rrow, pc in enumerate(pivots):
        x[pc] = R[rrow, n]
    return x


def inv_matrix(field: Field, M: np.ndarray) -> np.ndarray | None:
    """Inverse of a square matrix (n, n, k), or None if singular."""
    n = M.shape[0]
    eye = zeros(field, (n, n))
    for i in range(n):
        eye[i, i, 0] = 1
    aug = np.concatenate([M, eye], axis=1)
    R, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return R[:, n:, :]


def in_row_space(field: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    """Is v (n, k) in the span of rref basis rows (d, n, k)?"""
    return coords_in_row_space(field, basis, v) is not None


def coords_in_row_space(field: Field, basis: np.ndarray, v: np.ndarray):
    """Coordinates (d, k) of v in the rref basis rows, or None."""
    d = basis.shape[0]
    if d == 0:
        return None if np.any(v) else zeros(field, (0,))
    pivots = _pivot_columns(basis)
    if len(set(pivots)) == d:
        sub = basis[:, pivots, :]
        eye = zeros(field, (d, d))
        eye[np.arange(d), np.arange(d), 0] = 1
        if np.array_equal(sub, eye):
            # basis is in rref: the only candidate coordinates are the pivot
            # entries of v, so a residual check settles membership
            coords = v[pivots, :].copy()
            residual = (v - fmatmul(field, coords[None, :, :], basis)[0]) % field.p
            return None if np.any(residual) else coords
    stacked = np.concatenate([basis, v[None, :, :]], axis=0)
    R, _ = rref(field, stacked)
    if R.shape[0] != d:
        return None
    pivots = _pivot_columns(basis)
    coords = v[pivots, :].copy()
    return coords


def coords_in_row_space_many(field: Field, basis: np.ndarray, V: np.ndarray):
    """Coordinates (t, d, k) of each row of V (t, n, k) in the rref basis
    rows, or None if any row falls outside the span."""
    d = basis.shape[0]
    t = V.shape[0]
    if d == 0:
        return None if np.any(V) else zeros(field, (t, 0))
    pivots = _pivot_columns(basis)
    if len(set(pivots)) == d:
        sub = basis[:, pivots, :]
        eye = zeros(field, (d, d))
        eye[np.arange(d), np.arange(d), 0] = 1
        if np.array_equal(sub, eye):
            coords = V[:, pivots, :].copy()
            residual = (V - fmatmul(field, coords, basis)) % field.p
            return None if np.any(residual) else coords
    out = zeros(field, (t, d))
    for i in range(t):
        c = coords_in_row_space(field, basis, V[i])
        if c is None:
            return None
        out[i] = c
    return out


def _pivot_columns(basis: np.ndarray):
    pivots = []
    for row in basis:
        nz = np.flatnonzero(np.any(row, axis=1))
        pivots.append(int(nz[0]))
    return pivots


def sum_spaces(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[0] == 0:
        return row_space(field, B)
    if B.shape[0] == 0:
        return row_space(field, A)
    return row_space(field, np.concatenate([A, B], axis=0))


def intersect_spaces(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Intersection of two row spaces via the kernel of the stacked system."""
    if A.shape[0] == 0 or B.shape[0] == 0:
        return zeros(field, (0, A.shape[1]))
    # x = a @ A = b @ B  <=>  (a, b) in kernel of [A^T | -B^T]
    n = A.shape[1]
    M = np.concatenate([A.transpose(1, 0, 2), (-B.transpose(1, 0, 2)) % field.p],
                       axis=1)
    ker = nullspace(field, M)
    da = A.shape[0]
    if ker.shape[0] == 0:
        return zeros(field, (0, n))
    vecs = fmatmul(field, ker[:, :da, :], A)
    return row_space(field, vecs)


def embed_array(small: Field, big: Field, arr: np.ndarray) -> np.ndarray:
    """Map a (... , k_small) array into (... , k_big) along the canonical
    embedding."""
    mat = small.embedding_matrix(big)
    return np.tensordot(arr, mat, axes=([-1], [0])) % big.p
