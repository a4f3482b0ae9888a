"""Three small abelian categories: F_p-spaces, k[x]/(x^n)-modules and representations of 1 -> 2."""

from resolvent import abcat as ab

# modules over the dual numbers k[x]/(x^2)
b = ab.nilp(2)
R, k = ab.free(b), ab.cyclic(b, 1)
print("R =", R, " Jordan type", ab.jordan_type(R))
print("k =", k, " injective?", ab.is_injective(k))

env = ab.injective_envelope(k)
print("envelope k -> R, block:", env.blocks[0].tolist(), " mono?", ab.is_mono(env))
q, pi = ab.cokernel(env)
print("cokernel of k -> R:", q, "(again k, which is why the resolution never stops)")

# representations of the quiver 1 -> 2
a2 = ab.repa2()
S1, S2, I2 = ab.S1(a2), ab.S2(a2), ab.I2(a2)
for name, o in (("S1", S1), ("S2", S2), ("I2", I2)):
    print(f"{name}: dims {o.dims}, injective {ab.is_injective(o)}")
print("indecomposable injectives:", [o.dims for o in ab.indecomposable_injectives(a2)])

print("dim Hom(S2, I2) =", ab.hom_dim(S2, I2), " dim Hom(I2, S2) =", ab.hom_dim(I2, S2))

# pushout of two random maps out of a random object
a = ab.random_obj(a2, 3)
f = ab.random_mor(4, a, ab.random_obj(a2, 5))
g = ab.random_mor(6, a, ab.random_obj(a2, 7))
po, i1, i2 = ab.pushout(f, g)
print("pushout dims", po.dims, " square commutes:", i1 @ f == i2 @ g)
