"""Mapping classes of the once-marked surface as automorphisms of the surface group.

An automorphism is stored by the images of a_0, ..., a_{2g-1}.  When it was
built from the generators S and T it also carries ``expr``, a formal product
over the alphabet ``S s T t`` (lowercase = inverse), read left to right as a
product of mapping classes, so ``"sT"`` is S^-1 T: apply T first, then S^-1.
Inverses are only ever taken through ``expr``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from . import intmat
from .checks import SuiteReport
from .words import GenusContext, Word, free_reduce, invert, serialize


class AutomorphismError(ValueError):
    pass


_EXPR_INVERSE = {"S": "s", "s": "S", "T": "t", "t": "T"}


def reduce_expr(expr: str) -> str:
    out: list[str] = []
    for c in expr:
        if c not in _EXPR_INVERSE:
            raise AutomorphismError(f"bad expr letter {c!r}")
        if out and out[-1] == _EXPR_INVERSE[c]:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def invert_expr(expr: str) -> str:
    return "".join(_EXPR_INVERSE[c] for c in reversed(expr))


class Automorphism:
    """Relator-preserving endomorphism of the surface group given on generators.

    Equality is group equality of all generator images (``equal_auto``); the
    hash is the abelianization, which is an invariant of that equality.
    """

    __slots__ = ("ctx", "images", "expr", "_psi")

    def __init__(self, ctx: GenusContext, images: Sequence[Sequence[int]],
                 expr: str | None = None, *, check: bool = True):
        if len(images) != ctx.rank:
            raise AutomorphismError(f"need {ctx.rank} images, got {len(images)}")
        self.ctx = ctx
        self.images: tuple[Word, ...] = tuple(ctx.reduce(ctx.validate(w)) for w in images)
        self.expr = None if expr is None else reduce_expr(expr)
        self._psi = None
        if check and not ctx.is_trivial(apply(self, ctx.relator)):
            raise AutomorphismError("images do not preserve the surface relator")

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return equal_auto(self, other)

    def __hash__(self):
        return hash(abelianization(self))

    def __repr__(self):
        if self.expr is not None and len(self.expr) <= 24:
            return f"Automorphism({self.expr or 'id'})"
        return f"Automorphism({serialize_auto(self)})"

    def __call__(self, u: Sequence[int]) -> Word:
        return apply(self, u)

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)


def serialize_auto(f: Automorphism) -> str:
    body = " | ".join(serialize(w) for w in f.images)
    return body if f.expr is None else f"{body} ; {f.expr or 'id'}"


def apply(f: Automorphism, u: Sequence[int]) -> Word:
    imgs = f.images
    out: list[int] = []
    for x in u:
        img = imgs[x - 1] if x > 0 else invert(imgs[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def compose(f: Automorphism, h: Automorphism) -> Automorphism:
    """``f o h``: apply h first, then f."""
    if f.ctx is not h.ctx:
        raise AutomorphismError("automorphisms from different contexts")
    expr = None if f.expr is None or h.expr is None else f.expr + h.expr
    return Automorphism(f.ctx, [apply(f, w) for w in h.images], expr, check=False)


def identity(ctx: GenusContext) -> Automorphism:
    return _identity(ctx)


@lru_cache(maxsize=None)
def _identity(ctx):
    return Automorphism(ctx, [ctx.gen(i) for i in range(ctx.rank)], "")


@lru_cache(maxsize=None)
def _letter_auto(ctx: GenusContext, c: str) -> Automorphism:
    n = ctx.rank
    shift_up = [(i + 2,) for i in range(n - 1)]
    shift_down = [(i,) for i in range(1, n)]
    if c == "S":
        images = shift_up + [(-1,)]
    elif c == "T":
        images = shift_up + [ctx.a2g_word]
    elif c == "s":
        images = [(-n,)] + shift_down
    elif c == "t":
        images = [ctx.a2g_word] + shift_down
    else:
        raise AutomorphismError(f"bad expr letter {c!r}")
    return Automorphism(ctx, images, c)


def from_expr(ctx: GenusContext, expr: str) -> Automorphism:
    expr = reduce_expr(expr)
    acc = identity(ctx)
    for c in expr:
        acc = compose(acc, _letter_auto(ctx, c))
    return acc


def gen_S(ctx: GenusContext) -> Automorphism:
    return _letter_auto(ctx, "S")


def gen_T(ctx: GenusContext) -> Automorphism:
    return _letter_auto(ctx, "T")


def inverse(f: Automorphism) -> Automorphism:
    if f.expr is None:
        raise AutomorphismError("cannot invert an automorphism without an S/T expression")
    return from_expr(f.ctx, invert_expr(f.expr))


def power(f: Automorphism, n: int) -> Automorphism:
    if n < 0:
        f, n = inverse(f), -n
    acc = identity(f.ctx)
    for _ in range(n):
        acc = compose(acc, f)
    return acc


@lru_cache(maxsize=None)
def gen_d(ctx: GenusContext, j: int) -> Automorphism:
    """Characteristic mapping class d_j = T^-k (S^-1 T) T^k with j = 2g - k."""
    if not 0 <= j <= ctx.rank:
        raise AutomorphismError(f"d_j needs 0 <= j <= {ctx.rank}, got {j}")
    k = ctx.rank - j
    return from_expr(ctx, "t" * k + "s" + "T" * (k + 1))


@lru_cache(maxsize=None)
def gen_w(ctx: GenusContext) -> Automorphism:
    """a_0 -> a_1 -> ... -> a_{2g-2} -> a_0 and a_{2g-1} -> a_0^-1 a_{2g-1} a_0^-1."""
    n = ctx.rank
    images = [(i + 2,) for i in range(n - 2)] + [(1,), (-1, n, -1)]
    return Automorphism(ctx, images)


def product(autos: Sequence[Automorphism]) -> Automorphism:
    """Written-order product f_1 f_2 ... f_r (f_r acts first)."""
    if not autos:
        raise AutomorphismError("empty product")
    acc = autos[-1]
    for f in reversed(autos[:-1]):
        acc = compose(f, acc)
    return acc


def equal_auto(f: Automorphism, h: Automorphism) -> bool:
    ctx = f.ctx
    return all(ctx.equal(x, y) for x, y in zip(f.images, h.images))


def is_identity(f: Automorphism) -> bool:
    ctx = f.ctx
    return all(ctx.equal(w, ctx.gen(i)) for i, w in enumerate(f.images))


def order_of(f: Automorphism, cap: int) -> int | None:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    acc = f
    for n in range(1, cap + 1):
        if is_identity(acc):
            return n
        acc = compose(f, acc)
    return None


def abelianization(f: Automorphism) -> intmat.Matrix:
    """psi(f): column i is the exponent vector of f(a_i); lands in SL(2g, Z)."""
    if f._psi is None:
        cols = [f.ctx.exponent_sums(w) for w in f.images]
        m = tuple(zip(*cols))
        d = intmat.det(m)
        if d != 1:
            raise AutomorphismError(f"abelianization has determinant {d}")
        f._psi = m
    return f._psi


def preserves_relator(f: Automorphism) -> bool:
    return f.ctx.is_trivial(apply(f, f.ctx.relator))


def commutes(f: Automorphism, h: Automorphism) -> bool:
    return equal_auto(compose(f, h), compose(h, f))


def basic_word(ctx: GenusContext, i: int) -> Word:
    """a_i for 0 <= i <= 2g, with a_{2g} expanded to its defining word."""
    i %= ctx.rank + 1
    return ctx.a2g_word if i == ctx.rank else ctx.gen(i)


# 2x2 matrices displayed in the genus-1 worked example
GENUS1_MATRICES = {
    "S": ((0, -1), (1, 0)),
    "T": ((0, -1), (1, -1)),
    "d0": ((1, 0), (1, 1)),
    "d1": ((2, -1), (1, 0)),
    "d2": ((1, -1), (0, 1)),
}


def required_commuting_pairs(g: int) -> list[tuple[int, int]]:
    """Pairs m < n with {m, m-1} and {n, n-1} disjoint mod 2g+1."""
    N = 2 * g + 1
    out = []
    for m in range(N):
        for n in range(m + 1, N):
            if not {m, (m - 1) % N} & {n, (n - 1) % N}:
                out.append((m, n))
    return out


def adjacent_pairs(g: int) -> list[tuple[int, int]]:
    N = 2 * g + 1
    return sorted({tuple(sorted((m, (m + 1) % N))) for m in range(N)})


def verify_identities(ctx: GenusContext) -> SuiteReport:
    g, n = ctx.g, ctx.rank
    rep = SuiteReport("identities", g)
    S, T = gen_S(ctx), gen_T(ctx)
    ds = [gen_d(ctx, j) for j in range(n + 1)]
    ident = identity(ctx)

    oS, oT = order_of(S, 8 * g), order_of(T, 8 * g)
    rep.record("order(S) == 4g", oS == 4 * g, f"order={oS}")
    rep.record("order(T) == 2g+1", oT == 2 * g + 1, f"order={oT}")

    P = product(ds[::-1])  # d_{2g} d_{2g-1} ... d_0
    telescoped = compose(power(S, -(n + 1)), power(T, n + 1))
    rep.record("P == (S^-1)^(2g+1) T^(2g+1)", equal_auto(P, telescoped))
    rep.record("P == S^-(2g+1)", equal_auto(P, power(S, -(n + 1))))
    p_is_s_inv = equal_auto(P, power(S, -1))
    rep.data["P_equals_S_inverse"] = p_is_s_inv
    rep.notes.append(
        "product d_2g...d_0 equals S^-(2g+1); the displayed intermediate '= S^-1' "
        f"evaluates to {p_is_s_inv} (they differ by S^2g, which is not the identity)")
    rep.record("P^(2g) == S^(2g)", equal_auto(power(P, n), power(S, n)))
    rep.record("P^(4g) == id", equal_auto(power(P, 2 * n), ident))

    # action of d_j on a_0..a_2g
    for j, d in enumerate(ds):
        moved, prev = j, (j - 1) % (n + 1)
        ok = ctx.equal(apply(d, basic_word(ctx, moved)), invert(basic_word(ctx, prev)))
        fixed = [i for i in range(n + 1) if i not in (moved, prev)]
        ok_fixed = all(ctx.equal(apply(d, basic_word(ctx, i)), basic_word(ctx, i)) for i in fixed)
        rep.record(f"d_{j}: a_{moved} -> a_{prev}^-1", ok)
        rep.record(f"d_{j} fixes a_i, i not in {{{moved},{prev}}}", ok_fixed)
        k = n - j
        conj = compose(power(T, -k), compose(ds[n], power(T, k)))
        rep.record(f"d_{j} == T^-{k} d_{n} T^{k}", equal_auto(d, conj))
    rep.record("d_0(a_0) == a_2g^-1",
               ctx.equal(apply(ds[0], ctx.gen(0)), invert(ctx.a2g_word)))

    for m, k in required_commuting_pairs(g):
        rep.record(f"d_{m} d_{k} == d_{k} d_{m}", commutes(ds[m], ds[k]))
    for m, k in adjacent_pairs(g):
        c = commutes(ds[m], ds[k])
        rep.data.setdefault("adjacent_commute", {})[f"d_{m},d_{k}"] = c
        rep.record(f"adjacent d_{m}, d_{k} do not commute", not c)

    w = gen_w(ctx)
    rep.record("w preserves the relator", preserves_relator(w))
    rep.record("w^(2g-1) == d_2g^2", equal_auto(power(w, n - 1), compose(ds[n], ds[n])))

    if g == 1:
        named = {"S": S, "T": T, "d0": ds[0], "d1": ds[1], "d2": ds[2]}
        for name, f in named.items():
            got = abelianization(f)
            rep.record(f"psi({name}) matches the genus-1 example", got == GENUS1_MATRICES[name],
                       intmat.as_lists(got))
    rep.data["psi_P"] = intmat.as_lists(abelianization(P))
    return rep
