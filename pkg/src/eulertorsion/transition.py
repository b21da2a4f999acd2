"""The Euler chain e_g, its first lift c_1, the transition cycle t and the loops L_k.

All indices of A_i and d_j are taken mod 2g+1.
"""
from __future__ import annotations

from .chains import (BiGradedChain, OrientedSimplex, OrbitSearchExhausted, boundary_h,
                     boundary_v, image, orbit_augmentation, orbit_partition, permutation_sign,
                     simplex)
from .checks import SuiteReport
from .inversives import basics
from .mapping import commutes, gen_d, is_identity, power, product
from .words import GenusContext


def _omit(ctx: GenusContext, *idx: int) -> list:
    N = ctx.rank + 1
    drop = {i % N for i in idx}
    return [a for i, a in enumerate(basics(ctx)) if i not in drop]


def _d(ctx: GenusContext, j: int):
    return gen_d(ctx, j % (ctx.rank + 1))


def chain_e_g_half(ctx: GenusContext) -> BiGradedChain:
    """[A_0, A_2g, A_1, ..., A_2g-1]."""
    A = basics(ctx)
    n = ctx.rank
    return BiGradedChain.build(n, 0, [(1, [A[0], A[n]] + A[1:n])])


def chain_e_g(ctx: GenusContext) -> BiGradedChain:
    """[A_0, A_2g, A_1, ..., A_2g-1] - [A_0, A_1, ..., A_2g]."""
    A = basics(ctx)
    n = ctx.rank
    return BiGradedChain.build(n, 0, [(1, [A[0], A[n]] + A[1:n]), (-1, A)])


def chain_c1(ctx: GenusContext) -> BiGradedChain:
    N = ctx.rank + 1
    return BiGradedChain.build(ctx.rank - 1, 1, [
        ((-1) ** i, _omit(ctx, i), _d(ctx, i + 1)) for i in range(N)])


def transition_cycle(ctx: GenusContext) -> BiGradedChain:
    return boundary_h(chain_c1(ctx))


def transition_closed_form(ctx: GenusContext) -> BiGradedChain:
    """The double-sum expression for t, written out term by term."""
    N = ctx.rank + 1
    items = []
    for i in range(N):
        for j in range(N):
            if i > j:
                items.append(((-1) ** (i + j), _omit(ctx, i, j), _d(ctx, i + 1)))
            elif i < j:
                items.append(((-1) ** (i + j - 1), _omit(ctx, i, j), _d(ctx, i + 1)))
    return BiGradedChain.build(ctx.rank - 2, 1, items)


def chain_L(ctx: GenusContext, k: int) -> BiGradedChain:
    g, N = ctx.g, ctx.rank + 1
    if not 0 <= k <= g:
        raise ValueError(f"L_k needs 0 <= k <= {g}, got {k}")
    items = []
    for i in range(N):
        if k == 0:
            items.append((1, _omit(ctx, i, i + 1), _d(ctx, i + 1)))
        elif k == g:
            items.append((1, _omit(ctx, i, i + g), _d(ctx, i + g + 1)))
        else:
            items.append((1, _omit(ctx, i, i + k), _d(ctx, i + k + 1)))
            items.append((1, _omit(ctx, i, i + k + 1), _d(ctx, i + 1)))
    return BiGradedChain.build(ctx.rank - 2, 1, items)


def genus1_c1(ctx: GenusContext) -> BiGradedChain:
    A, d = basics(ctx), [gen_d(ctx, j) for j in range(3)]
    return BiGradedChain.build(1, 1, [(1, [A[1], A[2]], d[1]), (-1, [A[0], A[2]], d[2]),
                                      (1, [A[0], A[1]], d[0])])


def genus1_t(ctx: GenusContext) -> BiGradedChain:
    A, d = basics(ctx), [gen_d(ctx, j) for j in range(3)]
    return BiGradedChain.build(0, 1, [
        (1, [A[2]], d[1]), (-1, [A[1]], d[1]), (1, [A[0]], d[2]), (-1, [A[2]], d[2]),
        (1, [A[1]], d[0]), (-1, [A[0]], d[0])])


def base_simplex(ctx: GenusContext) -> OrientedSimplex:
    """[A_0, A_1, ..., A_2g-2]."""
    return simplex(basics(ctx)[: ctx.rank - 1])


def trace_loops(c: BiGradedChain) -> tuple[list[list], bool]:
    """Decompose a unit-coefficient q=1 chain into closed morphism loops.

    Each term ``c . (sigma . f)`` is read as a morphism out of the oriented
    object ``sign(c) sigma``.  Returns the loops and whether every step and
    every closing object matched orientation.
    """
    by_source = {}
    for (verts, (f,)), coef in c.items():
        if abs(coef) != 1 or verts in by_source:
            return [], False
        by_source[verts] = (coef, f)
    loops, used, orient_ok = [], set(), True
    for start in by_source:
        if start in used:
            continue
        x = OrientedSimplex(start, by_source[start][0])
        loop = []
        while True:
            entry = by_source.get(x.vertices)
            if entry is None or x.vertices in used:
                return loops, False
            coef, f = entry
            if coef != x.sign:
                orient_ok = False
            used.add(x.vertices)
            loop.append((x.vertices, f))
            x = image(f, x)
            if x.vertices == start:
                orient_ok &= x.sign == by_source[start][0]
                break
        loops.append(loop)
    return loops, orient_ok


def traverse_product_loop(ctx: GenusContext, rounds: int):
    """Walk from the base simplex applying d_0, d_1, ..., d_2g repeatedly.

    Returns (steps, final object); each step is (oriented source, d_j).
    """
    x = base_simplex(ctx)
    steps = []
    for _ in range(rounds):
        for j in range(ctx.rank + 1):
            f = gen_d(ctx, j)
            steps.append((x, f))
            x = image(f, x)
    return steps, x


def verify_transition(ctx: GenusContext, orbit_depth: int = 1) -> SuiteReport:
    g, n = ctx.g, ctx.rank
    N = n + 1
    rep = SuiteReport("transition", g)

    half, e = chain_e_g_half(ctx), chain_e_g(ctx)
    A = basics(ctx)
    q_sign = permutation_sign([0, n] + list(range(1, n)))
    rep.record("Q and R are an odd permutation apart", q_sign == -1, q_sign)
    rep.record("e_g == 2 (e_g/2)", e == 2 * half)
    rep.record("e_g is a single simplex with coefficient +-2",
               len(e) == 1 and abs(next(iter(e.terms.values()))) == 2,
               e.coefficient_of(A))
    rep.record("dh dh e_g == 0", not boundary_h(boundary_h(e)))

    c1 = chain_c1(ctx)
    rep.record("c_1 has 2g+1 terms", len(c1) == N, len(c1))
    rep.record("dv c_1 == dh e_g", boundary_v(c1) == boundary_h(e))
    faces = [v for v, _ in boundary_h(e).support()]
    try:
        part = orbit_partition(faces, [gen_d(ctx, j) for j in range(N)], orbit_depth,
                               required=[(faces[0], f) for f in faces[1:]])
        aug = orbit_augmentation(boundary_h(e), part)
        rep.record("faces of dh e_g form one d-orbit class", len(aug) == 1, len(aug))
        rep.record("orbit augmentation of dh e_g vanishes",
                   all(a.is_zero for a in aug.values()), list(aug.values()))
        rep.record("orbit merge witnesses replay", part.replay_witnesses())
    except OrbitSearchExhausted as exc:
        rep.record("faces of dh e_g form one d-orbit class", False, exc)
    if g == 1:
        rep.record("genus 1: c_1 == [A1,A2]d1 - [A0,A2]d2 + [A0,A1]d0",
                   c1 == genus1_c1(ctx))
        rep.record("genus 1: t == ([A2]-[A1])d1 + ([A0]-[A2])d2 + ([A1]-[A0])d0",
                   transition_cycle(ctx) == genus1_t(ctx))

    t = transition_cycle(ctx)
    rep.record("t == closed double-sum form", t == transition_closed_form(ctx))
    rep.record("support(t) == 2g(2g+1)", len(t) == n * N, len(t))
    rep.record("dv t == 0", not boundary_v(t))
    if t.p >= 1:
        rep.record("dh t == 0", not boundary_h(t))
    else:
        rep.record("dh t == 0", True, "p = 0: no horizontal boundary")

    Ls = [chain_L(ctx, k) for k in range(g + 1)]
    alt = Ls[0]
    for k in range(1, g + 1):
        alt = alt + (-1) ** k * Ls[k]
    rep.record("t == sum_k (-1)^k L_k", t == alt)
    for k, L in enumerate(Ls):
        expect = N if k in (0, g) else 2 * N
        rep.record(f"L_{k} has {expect} terms", len(L) == expect, len(L))
        rep.record(f"dv L_{k} == 0", not boundary_v(L))
    keys = [set(L.terms) for L in Ls]
    disjoint = sum(len(s) for s in keys) == len(set().union(*keys))
    rep.record("L_k supports pairwise disjoint", disjoint)
    rep.record("sum of |L_k| == 2g(2g+1)", sum(len(L) for L in Ls) == n * N)
    rep.record("L_0 terms are isotropic",
               all(image(f, OrientedSimplex(v, 1)) == OrientedSimplex(v, 1)
                   for (v, (f,)) in Ls[0].terms))

    # commutation squares between neighbouring loops: separations 2..g
    for s in range(2, g + 1):
        for j in range(N):
            m = (j + s) % N
            rep.record(f"square d_{m} d_{j} == d_{j} d_{m}",
                       commutes(gen_d(ctx, m), gen_d(ctx, j)))
    adjacent = {}
    for j in range(N):
        m = (j + 1) % N
        adjacent[f"d_{m},d_{j}"] = commutes(gen_d(ctx, m), gen_d(ctx, j))
    rep.data["adjacent_pairs_commute"] = adjacent
    rep.record("adjacent pairs (not required) do not commute",
               not any(adjacent.values()), adjacent)

    # loop closure: one inversive period is 2g rounds, the identity composite 4g
    total = Ls[0]
    for L in Ls[1:]:
        total = total + L
    steps, end = traverse_product_loop(ctx, 2 * n)
    period = n * N
    first, second = steps[:period], steps[period:]
    walked = BiGradedChain.build(n - 2, 1, [(x.sign, x.vertices, f) for x, f in first])
    rep.record("loop returns to the base after 2g rounds", first and
               traverse_product_loop(ctx, n)[1] == base_simplex(ctx))
    rep.record("2g rounds consume each generator of sum L_k exactly once",
               len({(x.vertices, f) for x, f in first}) == period and walked == total)
    rep.record("rounds 2g+1..4g repeat the first 2g",
               [(x, f) for x, f in first] == [(x, f) for x, f in second])
    rep.record("loop closes after 4g rounds", end == base_simplex(ctx))
    P = product([gen_d(ctx, j) for j in range(n, -1, -1)])
    rep.record("composite (d_2g ... d_0)^(4g) == id", is_identity(power(P, 2 * n)))

    shapes = {}
    for k, L in enumerate(Ls):
        loops, ok = trace_loops(L)
        shapes[f"L_{k}"] = [len(lp) for lp in loops]
        rep.record(f"L_{k} loops return in the same orientation class",
                   ok and sum(len(lp) for lp in loops) == len(L))
    rep.data["loop_lengths"] = shapes
    return rep
