"""Injective resolutions of objects and complexes, and Ext from them."""

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import resolutions as rs

a2 = ab.repa2()
S1, S2 = ab.S1(a2), ab.S2(a2)

r = rs.inj_res_object(S2, 3)
print("resolution of S2:", r.resolution, " complete:", r.complete)
print("Ext^1(S1, S2) =", rs.ext_group(S1, S2, 1).dim)
print("Ext^1(S2, S1) =", rs.ext_group(S2, S1, 1).dim)

# over k[x]/(x^2) the simple module has infinite injective dimension
b = ab.nilp(2)
k = ab.cyclic(b, 1)
r = rs.inj_res_object(k, 5)
print("\nresolution of k (depth 5):", r.resolution, " complete:", r.complete)
print("Ext^i(k, k) for i = 0..3:", [rs.ext_group(k, k, i).dim for i in range(4)])
try:
    rs.ext_group(k, k, 4, depth=3)
except rs.DepthInsufficient as e:
    print("asking too much of a short resolution:", e)

# a bounded-below complex
x = cx.random_complex(a2, 21, -1, 1)
r = rs.inj_res_bounded_below(x, 3)
print("\nX =", x)
print("E =", r.resolution)
print("checks:", rs.check_resolution(r))
print("certified degrees:", list(r.certified()))
