"""Brute-force oracles that share no code with the library's linear algebra.

Everything here enumerates F_p-vectors or matrices outright, so inputs must be
tiny.  Sizes are counted as integers and converted to dimensions by exact
logarithms.
"""

from __future__ import annotations

import itertools

import numpy as np


def exact_log(count: int, p: int) -> int:
    d = 0
    while count > 1:
        assert count % p == 0, "set size is not a power of p"
        count //= p
        d += 1
    return d


def det_mod(m: list[list[int]], p: int) -> int:
    """Leibniz expansion; fine for the 4 x 4 matrices used here."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total % p


def minor_rank(m: np.ndarray, p: int) -> int:
    """Largest k with a nonzero k x k minor."""
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                sub = [[int(m[i, j]) for j in cs] for i in rs]
                if det_mod(sub, p):
                    return k
    return 0


def vectors(n: int, p: int):
    for t in itertools.product(range(p), repeat=n):
        yield np.array(t, dtype=np.int64)


def kernel_size(m: np.ndarray, p: int) -> int:
    m = np.asarray(m, dtype=np.int64)
    return sum(1 for v in vectors(m.shape[1], p) if not (m @ v % p).any())


def image_size(m: np.ndarray, p: int) -> int:
    m = np.asarray(m, dtype=np.int64)
    return len({tuple(m @ v % p) for v in vectors(m.shape[1], p)})


def matrices(rows: int, cols: int, p: int):
    for t in itertools.product(range(p), repeat=rows * cols):
        yield np.array(t, dtype=np.int64).reshape(rows, cols)


def count_homs(dims_a, ops_a, dims_b, ops_b, arrows, p: int) -> int:
    """Number of vertex-wise matrix tuples commuting with every structure matrix."""
    spaces = [list(matrices(db, da, p)) for da, db in zip(dims_a, dims_b)]
    count = 0
    for blocks in itertools.product(*spaces):
        ok = True
        for (s, t), oa, ob in zip(arrows, ops_a, ops_b):
            if ((np.asarray(ob) @ blocks[s] - blocks[t] @ np.asarray(oa)) % p).any():
                ok = False
                break
        count += ok
    return count


def repa2_ext1(fa: np.ndarray, fb: np.ndarray, p: int) -> int:
    """dim Ext^1(a, b) for representations ``a1 -> a2`` and ``b1 -> b2`` of 1 -> 2.

    An extension is ``b1+a1 -> b2+a2`` with matrix ``[[fb, c], [0, fa]]`` for any
    ``c: a1 -> b2``; it splits when ``c = t2 fa - fb t1``.  Both sets are
    enumerated.
    """
    fa, fb = np.asarray(fa, dtype=np.int64), np.asarray(fb, dtype=np.int64)
    a2, a1 = fa.shape
    b2, b1 = fb.shape
    cocycles = p ** (b2 * a1)
    split = {tuple((t2 @ fa - fb @ t1).ravel() % p)
             for t1 in matrices(b1, a1, p) for t2 in matrices(b2, a2, p)}
    return exact_log(cocycles // len(split), p)


def repa2_ext1_by_sections(fa: np.ndarray, fb: np.ndarray, p: int) -> int:
    """Same value, deciding splitting by searching for a section of each extension."""
    fa, fb = np.asarray(fa, dtype=np.int64), np.asarray(fb, dtype=np.int64)
    a2, a1 = fa.shape
    b2, b1 = fb.shape
    split = 0
    for c in matrices(b2, a1, p):
        y = np.block([[fb, c], [np.zeros((a2, b1), dtype=np.int64), fa]]) % p
        found = False
        for t1 in matrices(b1, a1, p):
            s1 = np.vstack([t1, np.eye(a1, dtype=np.int64)])
            for t2 in matrices(b2, a2, p):
                s2 = np.vstack([t2, np.eye(a2, dtype=np.int64)])
                if not ((y @ s1 - s2 @ fa) % p).any():
                    found = True
                    break
            if found:
                break
        split += found
    return exact_log(p ** (b2 * a1) // split, p)


def nilp_ext1_from_k(x: np.ndarray, n: int, p: int) -> int:
    """dim Ext^1(k, a) over k[x]/(x^n) for ``a`` with loop ``x``.

    Extensions are ``a + k`` with loop ``[[x, c], [0, 0]]``; nilpotency asks
    ``x^(n-1) c = 0`` and splitting asks ``c`` in the image of ``x``.
    """
    x = np.asarray(x, dtype=np.int64)
    d = x.shape[0]
    power = np.eye(d, dtype=np.int64)
    for _ in range(n - 1):
        power = power @ x % p
    cocycles = sum(1 for c in vectors(d, p) if not (power @ c % p).any())
    return exact_log(cocycles // image_size(x, p), p)


def cohomology_dim(d_in: np.ndarray, d_out: np.ndarray, p: int) -> int:
    """``dim ker(d_out) - dim im(d_in)`` by enumeration over F_p."""
    return exact_log(kernel_size(d_out, p) // image_size(d_in, p), p)
