"""Cochain complexes: cohomology, cones, truncations and homotopies."""

import numpy as np

from resolvent import abcat as ab
from resolvent import complexes as cx

b = ab.repa2()
rng = np.random.default_rng(11)
x = cx.random_complex(b, rng, -1, 1)
y = cx.random_complex(b, rng, -1, 1)
print("X =", x)
print("H(X) dims:", cx.cohomology_dims(x))

f = cx.random_chain_map(rng, x, y)
c, _, _ = cx.cone(f)
print("cone(f) =", c)
print("f quasi-iso:", cx.is_quasi_iso(f), " cone exact:", cx.is_exact(c))

t, rho = cx.truncate_left(x, 0)
print("tau^{>=0} X =", t, " rho quasi-iso in degrees >= 0:",
      cx.is_quasi_iso(rho, [n for n in x.degrees() if n >= 0]))

# perturb f by a random null-homotopic map and recover the homotopy
hs = {n: ab.random_mor(rng, x.obj(n), y.obj(n - 1)) for n in x.degrees()}
h = cx.Homotopy(x, y, hs)
g = cx.ChainMap(x, y, {n: f.comp(n) + h.boundary(n) for n in x.degrees()})
found = cx.find_homotopy(g, f)
print("homotopy g ~ f found:", found is not None and found.witnesses(g, f))

# a disk is contractible
d = cx.disk(ab.I2(b), 0)
print("disk exact:", cx.is_exact(d),
      " id ~ 0 on disk:", cx.find_homotopy(cx.identity_map(d), cx.zero_map(d, d)) is not None)
