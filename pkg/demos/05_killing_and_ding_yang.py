"""Killing cohomology one degree at a time, and the iteration on S^0(k) over k[x]/(x^2)."""

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import resolutions as rs

x = cx.random_complex(ab.repa2(), 5, -1, 1)
print("X =", x, " H:", cx.cohomology_dims(x))
k, pi = rs.kill_coboundaries(x, -1)
print("K(X,-1) =", k, " H:", cx.cohomology_dims(k))
print("checks:", rs.check_killing(x, -1, k, pi))

b = ab.nilp(2, 5)
kk = ab.cyclic(b, 1)
steps = 13
degrees = rs.ding_yang_degrees(steps)
print("\nkilling degrees:", degrees)
for i, (y, _) in enumerate(rs.ding_yang_iterate(cx.stalk(kk, 0), steps)):
    iso = cx.find_complex_iso(y, rs.stalk_iteration_model(kk, i), seed=i)
    ok = iso is not None and cx.verify_iso(iso)
    print(f"Y{i:<2} (killed in {degrees[i]:>2}) ~ {rs.stalk_iteration_label(i):<45} {ok}")
print("exact in degrees", rs.ding_yang_exact_degrees(steps))
