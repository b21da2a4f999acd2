import random

import pytest

from eulertorsion.chains import BiGradedChain, image
from eulertorsion.detection import (ConnectError, Connector, DetectionError, KForm, connect,
                                    detect_cycle, holonomy, k_form, lifting_obstruction, phi,
                                    phi_of, torsion_bound, verify_bound, verify_detection,
                                    verify_obstruction)
from eulertorsion.inversives import basics
from eulertorsion.mapping import (abelianization, compose, equal_auto, gen_d, gen_S, gen_T, gen_w,
                                  identity, inverse, is_identity, product)
from eulertorsion.transition import base_simplex, chain_L, trace_loops, transition_cycle
from eulertorsion.words import GenusContext

G1 = GenusContext(1)

# detect(L_k) for k = 0..g, computed by the loop-product oracle below and frozen
DETECT_L = {1: [-3, 3], 2: [-15, 10, 5], 3: [-35, 14, 14, 7]}


def loop_product_detect(ctx, chain):
    """Independent route: multiply each traced loop and conjugate it into the base once."""
    conn = Connector(ctx)
    loops, ok = trace_loops(chain)
    assert ok
    total = 0
    for lp in loops:
        x = identity(ctx)
        for _, f in lp:
            x = compose(f, x)
        start = lp[0][0]
        elt = compose(conn.inverse_to(start), compose(x, conn.morphism_to(start)))
        assert image(elt, conn.base) == conn.base
        coef = chain.coefficient_of(start, lp[0][1])
        total += coef * conn.orientation(start) * phi_of(elt)
    return total


def test_k_form_examples(ctx):
    n = ctx.rank
    k = k_form(abelianization(gen_d(ctx, n)))
    assert k == KForm(1, tuple(range(n - 1)), (-1,) * (n - 1))
    assert k.matrix() == abelianization(gen_d(ctx, n))
    assert k_form(abelianization(identity(ctx))) == KForm(1, tuple(range(n - 1)), (0,) * (n - 1))
    assert phi(k) == -(2 * ctx.g - 1)
    assert phi_of(gen_w(ctx)) == -2
    assert phi_of(identity(ctx)) == 0


def test_k_form_rejects_non_isotropic():
    with pytest.raises(DetectionError):
        k_form(abelianization(gen_S(G1)))


def test_connect_examples(ctx):
    base = base_simplex(ctx)
    assert is_identity(connect(ctx, base, base))
    assert equal_auto(connect(ctx, base, image(gen_T(ctx), base)), gen_T(ctx))
    conn = Connector(ctx)
    for (verts, _), _ in transition_cycle(ctx).items():
        conn.orientation(verts)
    with pytest.raises(ConnectError):
        conn.orientation(tuple(basics(ctx)[1:]))


def test_genus_one_holonomy_by_conjugacy():
    d = [gen_d(G1, j) for j in range(3)]
    T = gen_T(G1)
    assert equal_auto(compose(inverse(T), compose(d[0], T)), d[2])


def test_isotropic_term_at_base_is_itself(ctx):
    conn = Connector(ctx)
    n = ctx.rank
    c = BiGradedChain.build(n - 2, 1, [(1, basics(ctx)[:n - 1], gen_d(ctx, n))])
    (h,) = holonomy(c, conn)
    assert equal_auto(h.elt, gen_d(ctx, n)) and h.coef == 1


def test_holonomy_elements_fix_base_and_are_k_forms(ctx):
    conn = Connector(ctx)
    for h in holonomy(transition_cycle(ctx), conn):
        assert image(h.elt, conn.base) == conn.base
        k_form(abelianization(h.elt))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_detect_L_against_loop_oracle(g):
    ctx = GenusContext(g)
    conn = Connector(ctx)
    for k in range(g + 1):
        L = chain_L(ctx, k)
        got = detect_cycle(L, conn)
        assert got == loop_product_detect(ctx, L) == DETECT_L[g][k]


@pytest.mark.parametrize("g", [1, 2, 3])
def test_detect_t_closed_form_and_choice_independence(g):
    ctx = GenusContext(g)
    t = transition_cycle(ctx)
    values = {detect_cycle(t, Connector(ctx, seed=s)) for s in (None, 1, 2, 3, 4)}
    assert values == {-2 * g * (2 * g + 1)}
    assert sum(DETECT_L[g]) == 0
    assert DETECT_L[g][0] == (2 * g + 1) * -(2 * g - 1)


def test_genus_one_displayed_isotropy_element():
    d = [gen_d(G1, j) for j in range(3)]
    x = product([inverse(d[0]), d[1], inverse(d[2]), d[0], inverse(d[1]), d[2]])
    assert abelianization(x) == ((-1, 6), (0, -1))
    assert phi_of(x) == detect_cycle(transition_cycle(G1), Connector(G1)) == -6
    assert abelianization(compose(x, x)) == ((1, -12), (0, 1))


@pytest.mark.parametrize("g", [1, 2])
def test_phi_additive_on_isotropy_products(g):
    ctx = GenusContext(g)
    elts = [h.elt for h in holonomy(transition_cycle(ctx), Connector(ctx))]
    rng = random.Random(g)
    for _ in range(50):
        x, y = rng.choice(elts), rng.choice(elts)
        if rng.random() < 0.5:
            y = inverse(y)
        assert phi_of(compose(x, y)) == phi_of(x) + phi_of(y)


def test_phi_shadow_of_w_relation(ctx):
    g = ctx.g
    assert (2 * g - 1) * phi_of(gen_w(ctx)) == 2 * phi_of(gen_d(ctx, ctx.rank))


def test_lifting_obstruction(ctx):
    assert lifting_obstruction(ctx, 0).kind == "liftable"
    v1 = lifting_obstruction(ctx, 1)
    assert v1.kind == "parity" and v1.data["witness_replay"]
    v2 = lifting_obstruction(ctx, 2)
    assert v2.kind == "detection" and v2.data["detect_t"] != 0
    assert lifting_obstruction(ctx, 3).kind == "parity"


@pytest.mark.parametrize("g,bound", [(1, 12), (2, 120), (3, 420)])
def test_torsion_bound_arithmetic(g, bound):
    b = torsion_bound(GenusContext(g))
    assert b.bound == bound
    assert b.lambda1 == 4 * g * (2 * g + 1)
    assert b.lambda2 == 2 * g * (2 * g + 1) * (2 * g - 1)
    assert b.routes["d_route"] == b.routes["w_route"] == -bound
    assert any("2m" in n for n in b.notes)
    # the directly detected value is not the routes' value
    assert b.detect_t == -2 * g * (2 * g + 1)
    assert b.consistency_ok is False


def test_suites_report_only_the_cross_route_checks(ctx):
    rep = verify_detection(ctx, samples=40)
    assert [c.name for c in rep.failures()] == ["detect(t) == 4g(2g+1) phi(d_2g)"]
    brep, _ = verify_bound(ctx, rep.data["detect_t"])
    assert [c.name for c in brep.failures()] == ["routes agree with direct detect(t)"]
    assert verify_obstruction(ctx, rep.data["detect_t"]).ok
