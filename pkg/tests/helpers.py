"""Shared generators for randomized tests."""
import random

from eulertorsion.chains import BiGradedChain
from eulertorsion.inversives import act, basics
from eulertorsion.mapping import compose, gen_d
from eulertorsion.words import free_reduce, invert


def letters(g):
    return [s * (i + 1) for i in range(2 * g) for s in (1, -1)]


def random_word(g, rng: random.Random, max_len=10):
    return free_reduce(rng.choice(letters(g)) for _ in range(rng.randint(0, max_len)))


def relator_product(ctx, rng: random.Random, max_count=3):
    """A product of up to ``max_count`` conjugated relators (or their inverses)."""
    r = ()
    for _ in range(rng.randint(1, max_count)):
        c = random_word(ctx.g, rng, 5)
        rel = ctx.relator if rng.random() < 0.5 else invert(ctx.relator)
        r = free_reduce(r + c + rel + invert(c))
    return r


def vertex_pool(ctx, rng, size=10):
    ds = [gen_d(ctx, j) for j in range(ctx.rank + 1)]
    pool = set(basics(ctx))
    while len(pool) < size:
        x = rng.choice(sorted(pool))
        pool.add(act(rng.choice(ds), x))
    return sorted(pool)


def random_morph(ctx, rng):
    ds = [gen_d(ctx, j) for j in range(ctx.rank + 1)]
    f = rng.choice(ds)
    if rng.random() < 0.3:
        f = compose(f, rng.choice(ds))
    return f


def random_chain(ctx, rng, p, q, terms=4):
    pool = vertex_pool(ctx, rng)
    items = []
    for _ in range(terms):
        verts = rng.sample(pool, p + 1)
        items.append((rng.randint(-3, 3), verts, *(random_morph(ctx, rng) for _ in range(q))))
    return BiGradedChain.build(p, q, items)
