"""Cartan-Eilenberg resolutions, the sign trick and totalization."""

from resolvent import abcat as ab
from resolvent import bicomplexes as bc
from resolvent import complexes as cx
from resolvent import resolutions as rs

x = cx.random_complex(ab.nilp(2), 8, -1, 1)
print("X =", x)
ce = rs.ce_resolution(x, 3)
print("grid support:", ce.grid.support())
print("ce checks:", rs.check_ce(ce))

tot = bc.tot_bicomplex(ce.grid)
lam = rs.tot_augmentation(ce)
print("Tot =", tot)
print("Tot(lam) quasi-iso on", list(ce.tot_window()), ":",
      cx.is_quasi_iso(lam, list(ce.tot_window())))

# sign trick round trip
dc = bc.sign_trick(ce.grid)
print("unsign(sign_trick(grid)) == grid:", bc.unsign(dc) == ce.grid)

# zero differentials: the multicomplex is a product of shifted column resolutions
z = cx.Complex(ab.repa2(), 0, [ab.S2(ab.repa2()), ab.zero_obj(ab.repa2()), ab.S2(ab.repa2())])
m, lam0 = bc.saneblidze_trivial_diff(z, 2)
aug = bc.augmentation_into_tot(m, lam0, z)
print("\ntrivial-differential input:", z)
print("Tot =", bc.tot_multicomplex(m), " quasi-iso:", cx.is_quasi_iso(aug))
