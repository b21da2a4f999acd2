"""Inversives: surface-group elements up to w ~ w^-1, and the induced action."""
from __future__ import annotations

from functools import lru_cache, total_ordering
from typing import Sequence

from .checks import SuiteReport
from .mapping import Automorphism, apply, basic_word, gen_d, gen_S, gen_T, order_of
from .words import GenusContext, Word, invert, serialize, shortlex_key


@total_ordering
class Inversive:
    """Canonical representative of {w, w^-1}; compared shortlex on ``canon``."""

    __slots__ = ("canon", "_key")

    def __init__(self, canon: Word):
        self.canon = canon
        self._key = shortlex_key(canon)

    def __eq__(self, other):
        return isinstance(other, Inversive) and self.canon == other.canon

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self.canon)

    def __repr__(self):
        return f"Inversive({serialize(self.canon)})"

    def __str__(self):
        return serialize(self.canon)


def inversive_of(ctx: GenusContext, u: Sequence[int]) -> Inversive:
    a = ctx.normal_form(u)
    if not a:
        raise ValueError("the identity element has no inversive")
    b = ctx.normal_form(invert(a))
    return Inversive(min(a, b, key=shortlex_key))


def basic(ctx: GenusContext, i: int) -> Inversive:
    """A_i, the inversive of a_i (A_{2g} comes from a_{2g})."""
    if not 0 <= i <= ctx.rank:
        raise ValueError(f"basic inversive index {i} out of range")
    return _basic(ctx, i)


@lru_cache(maxsize=None)
def _basic(ctx, i):
    return inversive_of(ctx, basic_word(ctx, i))


def basics(ctx: GenusContext) -> list[Inversive]:
    return [basic(ctx, i) for i in range(ctx.rank + 1)]


_ACT_CACHE: dict = {}


def act(f: Automorphism, x: Inversive) -> Inversive:
    # keyed on object identity of f; group-equal automorphisms act identically
    key = (id(f), x.canon)
    hit = _ACT_CACHE.get(key)
    if hit is not None and hit[0] is f:
        return hit[1]
    y = inversive_of(f.ctx, apply(f, x.canon))
    _ACT_CACHE[key] = (f, y)
    return y


def compare(x: Inversive, y: Inversive) -> int:
    return (x._key > y._key) - (x._key < y._key)


def basic_index(ctx: GenusContext, x: Inversive) -> int | None:
    for i, b in enumerate(basics(ctx)):
        if b == x:
            return i
    return None


def action_table(ctx: GenusContext, f: Automorphism) -> dict[int, int | None]:
    """Image index of each A_i under f; None when the image is not basic."""
    return {i: basic_index(ctx, act(f, b)) for i, b in enumerate(basics(ctx))}


def verify_inversive_action(ctx: GenusContext) -> SuiteReport:
    g, n = ctx.g, ctx.rank
    N = n + 1
    rep = SuiteReport("action", g)
    bs = basics(ctx)
    rep.record("A_0..A_2g pairwise distinct", len(set(bs)) == N, [str(b) for b in bs])

    tables = {}
    for j in range(N):
        tab = action_table(ctx, gen_d(ctx, j))
        tables[f"d_{j}"] = tab
        src, dst = j, (j - 1) % N
        rep.record(f"d_{j}: A_{src} -> A_{dst}", tab[src] == dst, tab)
        others = [i for i in range(N) if i not in (src, dst)]
        rep.record(f"d_{j} fixes A_i, i not in {{{src},{dst}}}",
                   all(tab[i] == i for i in others))

    S, T = gen_S(ctx), gen_T(ctx)
    tS, tT = action_table(ctx, S), action_table(ctx, T)
    tables["S"], tables["T"] = tS, tT
    rep.record("S: A_0 -> A_1 -> ... -> A_2g-1 -> A_0",
               all(tS[i] == (i + 1) % n for i in range(n)), tS)
    rep.record("S moves A_2g off the basic inversives", tS[n] is None,
               str(act(S, bs[n])))
    rep.record("T: A_0 -> A_1 -> ... -> A_2g -> A_0",
               all(tT[i] == (i + 1) % N for i in range(N)), tT)

    # order of the S-action on {A_0..A_2g-1} versus order of S
    perm = [tS[i] for i in range(n)]
    k, cur = 1, perm[:]
    while cur != list(range(n)):
        cur = [perm[c] for c in cur]
        k += 1
    rep.data["S_action_order"] = k
    rep.data["S_order"] = order_of(S, 8 * g)
    rep.record("order of the S-action on the A_i == 2g", k == n, k)
    rep.record("order(S) == 4g although the action has order 2g",
               rep.data["S_order"] == 2 * n)
    rep.data["tables"] = {name: {f"A_{i}": (None if v is None else f"A_{v}")
                                 for i, v in t.items()} for name, t in tables.items()}
    return rep
