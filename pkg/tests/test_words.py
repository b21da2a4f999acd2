import itertools
import random

import pytest
from helpers import letters
from hypothesis import given, strategies as st

from eulertorsion.words import (GenusContext, WordError, free_reduce, invert, parse, serialize,
                                shortlex_key)

G2 = GenusContext(2)


def words(g, max_len=12):
    return st.lists(st.sampled_from(letters(g)), max_size=max_len).map(tuple)


def all_reduced_words(g, max_len):
    out, frontier = [()], [()]
    for _ in range(max_len):
        frontier = [w + (x,) for w in frontier for x in letters(g) if not (w and w[-1] == -x)]
        out += frontier
    return out


def slow_free_reduce(u):
    # repeatedly delete the first cancelling pair
    u = list(u)
    changed = True
    while changed:
        changed = False
        for i in range(len(u) - 1):
            if u[i] == -u[i + 1]:
                del u[i:i + 2]
                changed = True
                break
    return tuple(u)


def insert_relators(ctx, u, rng, count=3):
    v = u
    for _ in range(count):
        c = free_reduce(rng.choice(letters(ctx.g)) for _ in range(rng.randint(0, 5)))
        rel = ctx.relator if rng.random() < 0.5 else invert(ctx.relator)
        pos = rng.randint(0, len(v))
        v = free_reduce(v[:pos] + c + rel + invert(c) + v[pos:])
    return v


def test_free_reduce_examples():
    a0, a1 = 1, 2
    assert free_reduce((a0, -a0)) == ()
    assert free_reduce((a0, a1, -a1, a0)) == (a0, a0)
    assert free_reduce(G2.relator) == G2.relator


@given(words(2, 20))
def test_free_reduce_matches_naive_cancellation(u):
    assert free_reduce(u) == slow_free_reduce(u)


@given(words(2), words(2))
def test_free_reduce_confluent(u, v):
    assert free_reduce(free_reduce(u) + v) == free_reduce(u + v)


@given(words(3))
def test_invert_involution(u):
    u = free_reduce(u)
    assert invert(invert(u)) == u


def test_multiply_and_invert_examples():
    assert G2.multiply((1,), (-1,)) == ()
    assert G2.multiply((1, 2), (-2, 3)) == (1, 3)
    assert G2.multiply((1, 2), ()) == (1, 2)
    assert invert((1, 2)) == (-2, -1)
    assert invert(()) == ()


@given(words(2))
def test_serialize_roundtrip(u):
    u = free_reduce(u)
    assert parse(serialize(u)) == u


def test_serialize_format():
    assert serialize(()) == "1"
    assert serialize((1, -3)) == "a0 A2"
    with pytest.raises(WordError):
        parse("b7")


def test_relator_and_table(contexts):
    for g, ctx in contexts.items():
        assert len(ctx.relator) == 4 * g
        assert len(set(ctx.cyclic_table)) == 8 * g


def test_a2g_word():
    assert GenusContext(1).a2g_word == (-2, -1)
    assert G2.a2g_word == (-4, -3, -2, -1)
    assert G2.is_trivial(G2.multiply(G2.a2g_word, (1, 2, 3, 4)))


def test_dehn_examples():
    assert G2.dehn_reduce(G2.relator) == ()
    prefix = G2.relator[:5]
    assert G2.dehn_reduce(prefix) == invert(G2.relator[5:])
    assert G2.dehn_reduce((1,)) == (1,)


def test_triviality_and_equality(contexts):
    for ctx in contexts.values():
        assert ctx.is_trivial(ctx.relator)
        assert not ctx.is_trivial((1,))
    g1 = GenusContext(1)
    assert g1.is_trivial((1, 2, -1, -2))
    assert not G2.equal((1,), (2,))


def test_product_equals_reversed_product(contexts):
    for g, ctx in contexts.items():
        n = 2 * g
        assert ctx.equal(tuple(range(1, n + 1)), tuple(range(n, 0, -1)))


def test_normal_form_examples():
    assert G2.normal_form(G2.relator + (1,)) == (1,)
    assert GenusContext(1).normal_form((2, 1)) == (1, 2)


@pytest.mark.parametrize("g,max_len", [(2, 5), (3, 4)])
def test_normal_form_is_canonical_and_minimal(g, max_len):
    """Exhaustive oracle: on all short words, equal elements share a normal form
    and the normal form is a shortest representative."""
    ctx = GenusContext(g)
    ws = all_reduced_words(g, max_len)
    nf = {w: ctx.normal_form(w) for w in ws}
    assert all(ctx.equal(w, nf[w]) for w in ws)
    buckets = {}
    for w in ws:
        buckets.setdefault(tuple(ctx.exponent_sums(w)), []).append(w)
    for bucket in buckets.values():
        reps = {}
        for w in bucket:
            reps.setdefault(nf[w], w)
        for u, v in itertools.combinations(reps.values(), 2):
            assert not ctx.equal(u, v), (u, v)
    best = {}
    for w in ws:
        k = nf[w]
        if k not in best or shortlex_key(w) < best[k]:
            best[k] = shortlex_key(w)
    for k, key in best.items():
        assert shortlex_key(k) == key


@pytest.mark.parametrize("g", [2, 3])
def test_relator_insertions_preserve_normal_form(g):
    ctx = GenusContext(g)
    rng = random.Random(g)
    for _ in range(200):
        u = free_reduce(rng.choice(letters(g)) for _ in range(rng.randint(0, 10)))
        v = insert_relators(ctx, u, rng)
        assert ctx.equal(u, v)
        assert ctx.normal_form(u) == ctx.normal_form(v)


@given(words(1, 16), words(1, 16))
def test_genus_one_is_abelian(u, v):
    ctx = GenusContext(1)
    assert ctx.equal(u + v, v + u)
    assert ctx.equal(u, v) == (ctx.exponent_sums(u) == ctx.exponent_sums(v))


@given(words(2, 10), words(2, 10))
def test_equality_is_an_equivalence_compatible_with_products(u, v):
    ctx = G2
    assert ctx.equal(u, u)
    assert ctx.equal(u, v) == ctx.equal(v, u)
    assert ctx.equal(ctx.multiply(u, invert(free_reduce(u))), ())


def test_genus_validation():
    with pytest.raises(WordError):
        GenusContext(0)
    with pytest.raises(WordError):
        G2.validate((5,))
