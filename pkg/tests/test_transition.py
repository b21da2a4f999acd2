import pytest

from eulertorsion.chains import BiGradedChain, OrientedSimplex, boundary_h, boundary_v, image
from eulertorsion.inversives import basics
from eulertorsion.mapping import gen_d
from eulertorsion.transition import (base_simplex, chain_c1, chain_L, trace_loops,
                                     transition_closed_form, transition_cycle,
                                     traverse_product_loop, verify_transition)
from eulertorsion.words import GenusContext

G1 = GenusContext(1)


def test_genus_one_displayed_chains():
    A = basics(G1)
    d = [gen_d(G1, j) for j in range(3)]
    assert chain_c1(G1) == BiGradedChain.build(1, 1, [
        (1, [A[1], A[2]], d[1]), (-1, [A[0], A[2]], d[2]), (1, [A[0], A[1]], d[0])])
    assert transition_cycle(G1) == BiGradedChain.build(0, 1, [
        (1, [A[2]], d[1]), (-1, [A[1]], d[1]), (1, [A[0]], d[2]), (-1, [A[2]], d[2]),
        (1, [A[1]], d[0]), (-1, [A[0]], d[0])])
    L0 = BiGradedChain.build(0, 1, [(1, [A[2]], d[1]), (1, [A[0]], d[2]), (1, [A[1]], d[0])])
    L1 = BiGradedChain.build(0, 1, [(1, [A[1]], d[1]), (1, [A[2]], d[2]), (1, [A[0]], d[0])])
    assert chain_L(G1, 0) == L0 and chain_L(G1, 1) == L1
    assert transition_cycle(G1) == L0 - L1


@pytest.mark.parametrize("g,size", [(1, 6), (2, 20), (3, 42)])
def test_transition_cycle_structure(g, size):
    ctx = GenusContext(g)
    t = transition_cycle(ctx)
    assert len(t) == size
    assert t == transition_closed_form(ctx)
    assert not boundary_v(t)
    if t.p:
        assert not boundary_h(t)
    alt = chain_L(ctx, 0)
    for k in range(1, g + 1):
        assert not boundary_v(chain_L(ctx, k))
        alt = alt + (-1) ** k * chain_L(ctx, k)
    assert t == alt


def test_L0_isotropic(ctx):
    for (verts, (f,)), _ in chain_L(ctx, 0).items():
        s = OrientedSimplex(verts, 1)
        assert image(f, s) == s


@pytest.mark.parametrize("g,shape", [
    (1, {0: [1, 1, 1], 1: [3]}),
    (2, {0: [1] * 5, 1: [10], 2: [5]}),
    (3, {0: [1] * 7, 1: [14], 2: [14], 3: [7]}),
])
def test_loop_shapes(g, shape):
    ctx = GenusContext(g)
    for k, lengths in shape.items():
        loops, ok = trace_loops(chain_L(ctx, k))
        assert ok
        assert sorted(len(lp) for lp in loops) == lengths


def test_product_loop_period(ctx):
    n = ctx.rank
    _, end = traverse_product_loop(ctx, n)
    assert end == base_simplex(ctx)
    steps, _ = traverse_product_loop(ctx, n)
    assert len({(x.vertices, f) for x, f in steps}) == n * (n + 1)


def test_L_index_range():
    with pytest.raises(ValueError):
        chain_L(G1, 2)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_transition_suite(g):
    rep = verify_transition(GenusContext(g))
    assert rep.ok, rep.failures()
    assert not any(rep.data["adjacent_pairs_commute"].values())
