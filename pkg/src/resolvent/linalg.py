"""Exact dense linear algebra over a prime field F_p.

Matrices are plain ``numpy.int64`` arrays whose entries are residues in
``[0, p)``.  Every routine is deterministic: row reduction always picks the
topmost nonzero entry of the leftmost available column as pivot, and
``solve`` sets free variables to zero.
"""

from __future__ import annotations

import numpy as np

DEFAULT_P = 5

# float64 sums of residue products stay exact below this bound.
_FLOAT_EXACT = 2**52


class NoSolution(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column space."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def mat(data, p: int = DEFAULT_P, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``data`` to a 2-d int64 array of residues mod ``p``."""
    a = np.array(data, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim != 2:
        if a.size == 0:
            a = a.reshape(0, 0)
        else:
            raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return np.mod(a, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product ``a @ b`` reduced mod ``p``.

    Uses a float64 BLAS product whenever the result is guaranteed exact and
    falls back to integer arithmetic otherwise.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    if a.shape[1] * (p - 1) ** 2 < _FLOAT_EXACT:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(c.astype(np.int64), p)
    if a.shape[1] * (p - 1) ** 2 < 2**62:
        return np.mod(a @ b, p)
    return np.mod((a.astype(object) @ b.astype(object)), p).astype(np.int64)


def inv_scalar(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse mod p")
    return pow(int(a), p - 2, p)


def rref(m: np.ndarray, p: int = DEFAULT_P) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    r = np.mod(np.array(m, dtype=np.int64), p)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * inv_scalar(r[row, col], p)) % p
        factors = r[:, col].copy()
        factors[row] = 0
        nzr = np.nonzero(factors)[0]
        if nzr.size:
            r[nzr] = (r[nzr] - np.outer(factors[nzr], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, p: int = DEFAULT_P) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Columns form a basis of ``{x : m x = 0}``.

    The basis depends only on the row space of ``m``.
    """
    cols = m.shape[1]
    if m.shape[0] == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    k = zeros(cols, len(free))
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-r[i, f]) % p
    return k


def left_kernel_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Rows form a basis of ``{y : y m = 0}``."""
    return kernel_basis(m.T, p).T.copy()


def solve(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Return ``x`` with ``a x = b``; free variables are set to zero."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch {a.shape} vs {b.shape}")
    n = a.shape[1]
    if b.shape[1] == 0:
        return zeros(n, 0)
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    aug = np.concatenate([np.mod(a, p), np.mod(b, p)], axis=1)
    r, pivots = rref(aug, p)
    if pivots and pivots[-1] >= n:
        raise NoSolution("right-hand side is not in the column space")
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, n:]
    return x


def inverse(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    try:
        return solve(m, identity(m.shape[0]), p)
    except NoSolution:
        raise ValueError("matrix is singular") from None


def is_invertible(m: np.ndarray, p: int = DEFAULT_P) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def column_space_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """A basis of the column space, taken from the pivot columns of ``m``."""
    if m.size == 0:
        return zeros(m.shape[0], 0)
    _, pivots = rref(m, p)
    return np.mod(m[:, pivots], p)


def complement_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Standard basis vectors spanning a complement of the column space of ``m``."""
    n = m.shape[0]
    aug = np.concatenate([np.mod(m, p), identity(n)], axis=1)
    _, pivots = rref(aug, p)
    chosen = [c - m.shape[1] for c in pivots if c >= m.shape[1]]
    return identity(n)[:, chosen]


def vec(m: np.ndarray) -> np.ndarray:
    """Column-major vectorisation."""
    return m.reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape((rows, cols), order="F")


def block(rows: list[list[np.ndarray]]) -> np.ndarray:
    """Assemble a block matrix, tolerating blocks with a zero dimension."""
    if not rows or not rows[0]:
        return zeros(0, 0)
    heights = [r[0].shape[0] for r in rows]
    widths = [b.shape[1] for b in rows[0]]
    out = zeros(sum(heights), sum(widths))
    y = 0
    for i, r in enumerate(rows):
        x = 0
        for j, b in enumerate(r):
            if b.shape != (heights[i], widths[j]):
                raise ValueError("inconsistent block shapes")
            out[y:y + heights[i], x:x + widths[j]] = b
            x += widths[j]
        y += heights[i]
    return out


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    out = zeros(sum(b.shape[0] for b in blocks), sum(b.shape[1] for b in blocks))
    y = x = 0
    for b in blocks:
        out[y:y + b.shape[0], x:x + b.shape[1]] = b
        y += b.shape[0]
        x += b.shape[1]
    return out


def random_matrix(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def random_invertible(rng: np.random.Generator, n: int, p: int) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, p)
        if is_invertible(m, p):
            return m
