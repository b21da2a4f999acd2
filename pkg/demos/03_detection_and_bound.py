"""Holonomy of the transition cycle, the integer invariant phi, and the bound.

The direct value detect(t) = -2g(2g+1) is printed next to the two route
values 4g(2g+1) phi(d_2g) and 2g(2g+1)(2g-1) phi(w); they do not agree.
"""
from eulertorsion import Connector, GenusContext, chain_L, detect_cycle, gen_d, gen_w, phi_of
from eulertorsion import lifting_obstruction, torsion_bound, transition_cycle

for g in (1, 2, 3):
    ctx = GenusContext(g)
    conn = Connector(ctx)
    Ls = [detect_cycle(chain_L(ctx, k), conn) for k in range(g + 1)]
    b = torsion_bound(ctx)
    print(f"g={g}: phi(d_2g)={phi_of(gen_d(ctx, 2 * g))} phi(w)={phi_of(gen_w(ctx))} "
          f"detect(L_k)={Ls} detect(t)={b.detect_t} routes={b.routes['d_route']} "
          f"bound={b.bound}")

# seeds change the spanning tree of connecting morphisms but not the answer
ctx = GenusContext(2)
print({s: detect_cycle(transition_cycle(ctx), Connector(ctx, seed=s)) for s in range(4)})

for k in (0, 1, 2):
    v = lifting_obstruction(ctx, k)
    print(k, v.kind, "-", v.witness)
