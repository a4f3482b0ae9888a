"""Relative homological algebra: injective classes, a torsion pair and weak equivalences."""

import numpy as np

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import relclasses as rc

a2 = ab.repa2()
S1, S2 = ab.S1(a2), ab.S2(a2)
tors = rc.torsion_injectives(a2)

# relative resolutions and codimension
for name, cls in (("inj", rc.full_injectives(a2)), ("torsion", tors)):
    r = rc.rel_inj_res(cls, S2, 3)
    print(f"{name}: resolution of S2 = {r.complex}, codim <= {rc.I_codim_upper(cls, S2, 3)}")

# two resolutions of the same object are homotopy equivalent
c = rc.full_injectives(ab.nilp(2))
k = ab.cyclic(ab.nilp(2), 1)
rI, rJ = rc.rel_inj_res(c, k, 4, seed=1), rc.rel_inj_res(c, k, 4, seed=2)
he = rc.homotopy_equiv_resolutions(c, rI, rJ, seed=3)
print("\ncomparison of two seeded resolutions of k:", rc.check_homotopy_equivalence(rI, rJ, he))

# the torsion dictionary: I-weak equivalences are quasi-isomorphisms after Q
x = cx.random_complex(a2, 4, -1, 1)
_, incs, _ = cx.direct_sum([x, cx.stalk(S2, 0)])
f = incs[0]
print("\nX -> X + S^0(S2):")
print("  I-weak equivalence:", rc.is_I_we(tors, f))
print("  quasi-isomorphism:", cx.is_quasi_iso(f))
print("  Q(f) quasi-isomorphism:", cx.is_quasi_iso(rc.quotient_Q(tors.torsion, f)))

agree = 0
rng = np.random.default_rng(0)
for _ in range(50):
    y, z = cx.random_complex(a2, rng, 0, 1), cx.random_complex(a2, rng, 0, 1)
    g = cx.random_chain_map(rng, y, z)
    agree += rc.is_I_we(tors, g) == cx.is_quasi_iso(rc.quotient_Q(tors.torsion, g))
print("dictionary agreement on 50 random maps:", agree)

rep = rc.ab4_I_k_check(tors, [S1, S2, ab.I2(a2)], 0, 3)
print("product conditions:", rep.cond1, rep.cond2)
