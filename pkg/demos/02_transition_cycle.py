"""From the Euler chain to the transition cycle and its loops, genus 2."""
from eulertorsion import GenusContext, boundary_h, boundary_v, chain_c1, chain_e_g, chain_L
from eulertorsion import dump_chain, transition_cycle
from eulertorsion.transition import trace_loops

ctx = GenusContext(2)
e = chain_e_g(ctx)
print(dump_chain(e, 2))

c1 = chain_c1(ctx)
print("dv c1 == dh e:", boundary_v(c1) == boundary_h(e))

t = transition_cycle(ctx)
print("terms in t:", len(t), " dv t == 0:", not boundary_v(t), " dh t == 0:", not boundary_h(t))

alt = chain_L(ctx, 0) - chain_L(ctx, 1) + chain_L(ctx, 2)
print("t == L0 - L1 + L2:", t == alt)
for k in range(3):
    loops, ok = trace_loops(chain_L(ctx, k))
    print(f"L_{k}: loop lengths {[len(lp) for lp in loops]}, orientation kept: {ok}")
