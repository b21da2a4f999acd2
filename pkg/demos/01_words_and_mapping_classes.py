"""Surface-group words and the mapping classes S, T, d_j, w in genus 2."""
from eulertorsion import GenusContext, abelianization, compose, equal_auto, gen_d, gen_S, gen_T, gen_w
from eulertorsion.mapping import order_of, power, product
from eulertorsion.words import serialize

ctx = GenusContext(2)
print("relator:", serialize(ctx.relator))

# the product a0 a1 a2 a3 equals the reversed product in the surface group
u, v = (1, 2, 3, 4), (4, 3, 2, 1)
print("a0a1a2a3 == a3a2a1a0:", ctx.equal(u, v))
print("normal form of relator * a0:", serialize(ctx.normal_form(ctx.relator + (1,))))

S, T = gen_S(ctx), gen_T(ctx)
print("order(S) =", order_of(S, 16), " order(T) =", order_of(T, 16))

d = [gen_d(ctx, j) for j in range(5)]
for j, f in enumerate(d):
    print(f"d_{j}: expr {f.expr:<14} images", [serialize(w) for w in f.images])

# d_4 d_3 d_2 d_1 d_0 is S^-5, and its 8th power is trivial
P = product(d[::-1])
print("P == S^-5:", equal_auto(P, power(S, -5)), " P == S^-1:", equal_auto(P, power(S, -1)))
print("P^8 == id:", equal_auto(power(P, 8), power(S, 0)))

# non-adjacent d's commute, adjacent ones do not
print("d0 d2 == d2 d0:", equal_auto(compose(d[0], d[2]), compose(d[2], d[0])))
print("d0 d1 == d1 d0:", equal_auto(compose(d[0], d[1]), compose(d[1], d[0])))

w = gen_w(ctx)
print("w^3 == d_4^2:", equal_auto(power(w, 3), compose(d[4], d[4])))
print("psi(d_4) =", abelianization(d[4]))
