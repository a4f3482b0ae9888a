"""Exact linear algebra over F_p: rank, kernels and solving, all by integer arithmetic."""

import numpy as np

from resolvent import linalg as la

p = 7
m = la.mat([[1, 2, 3, 4],
            [2, 4, 6, 1],
            [0, 1, 1, 1]], p)

r, pivots = la.rref(m, p)
print("rref over F_7:")
print(r)
print("pivot columns:", pivots, " rank:", la.rank(m, p))

# kernel basis, checked by multiplying back
k = la.kernel_basis(m, p)
print("kernel basis (columns):")
print(k)
print("m @ k == 0:", not la.matmul(m, k, p).any())

# a consistent system: build b from a known x0, solve, compare images
rng = np.random.default_rng(1)
x0 = la.random_matrix(rng, 4, 1, p)
b = la.matmul(m, x0, p)
x = la.solve(m, b, p)
print("solution reproduces b:", la.matmul(m, x, p).tolist() == b.tolist())

# inconsistent systems raise instead of returning a least-squares guess
try:
    la.solve(la.mat([[1, 0], [0, 0]], p), la.mat([[0], [1]], p), p)
except la.NoSolution as e:
    print("no solution:", e)

# large primes stay exact
big = 2_147_483_647
a = np.full((2, 2), big - 1, dtype=np.int64)
print("(p-1)^2 * 2 mod p for p = 2^31 - 1:", la.matmul(a, a, big)[0, 0])
