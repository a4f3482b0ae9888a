"""Towers of partial resolutions of left truncations and their finite limits."""

from resolvent import abcat as ab
from resolvent import complexes as cx
from resolvent import towers as tw

x = cx.random_complex(ab.nilp(2), 2, -3, 1)
print("X =", x)
t = tw.build_tower(x, 4, 2)
for n in range(t.N + 1):
    extra = f"  disks added in {t.disks[n - 1]}" if n and t.disks[n - 1] else ""
    print(f"E_{n} = {t.E(n)}{extra}")
print("tower conditions:", tw.check_tower(t))

lim = tw.finite_limit(t)
print("\nlimit =", lim.complex)
print("iterated pullback agrees:", tw.pullback_agrees(t, lim))
print("X -> lim quasi-iso on", list(lim.window), ":", cx.is_quasi_iso(lim.lam, list(lim.window)))

seq = tw.lim_prod_sequence(t)
print("lim -> prod -> prod sequence:", tw.check_lim_prod(seq, lim))

for i in range(-3, 1):
    rep = tw.stabilization_check(t, i)
    print(f"H^{i}: dims per level {rep.h_dims}, stable from level {rep.stable_from}")
