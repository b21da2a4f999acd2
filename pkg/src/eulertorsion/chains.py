"""Oriented simplices on inversives and bigraded integer chains C_{p,q}, q <= 2.

A generator of C_{p,q} is a sorted vertex tuple together with q automorphisms;
``sigma . (f, h)`` means h acts on sigma first, then f on h(sigma).
Orientation signs are pushed into coefficients, so stored simplices are
always the sorted (positively oriented) ones.

Sign conventions: the horizontal boundary is the alternating face sum and the
vertical boundary is ``d(sigma . f) = f(sigma) - sigma``.  With these the two
boundaries commute; the anticommuting convention of a total complex is a
(-1)^p twist that is never needed here.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .inversives import Inversive, act
from .mapping import Automorphism, compose, inverse, serialize_auto
from .words import GenusContext, parse, serialize


class ChainError(ValueError):
    pass


class OrbitSearchExhausted(RuntimeError):
    """Bounded orbit search ended before the required merges happened."""


def permutation_sign(order: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedSimplex:
    vertices: tuple
    sign: int

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def __neg__(self):
        return OrientedSimplex(self.vertices, -self.sign)

    def __str__(self):
        if self.is_zero:
            return "0"
        body = "[" + ",".join(str(v) for v in self.vertices) + "]"
        return body if self.sign > 0 else "-" + body


ZERO = OrientedSimplex((), 0)


def simplex(vertices: Sequence[Inversive]) -> OrientedSimplex:
    vertices = tuple(vertices)
    if len(set(vertices)) < len(vertices):
        return ZERO
    order = sorted(range(len(vertices)), key=lambda i: vertices[i])
    return OrientedSimplex(tuple(vertices[i] for i in order), permutation_sign(order))


def image(f: Automorphism, s: OrientedSimplex) -> OrientedSimplex:
    """f(sigma), applied vertex-wise and re-canonicalized, keeping orientation."""
    if s.is_zero:
        return ZERO
    t = simplex([act(f, v) for v in s.vertices])
    return OrientedSimplex(t.vertices, t.sign * s.sign)


class BiGradedChain:
    """Finite integer combination of generators at bidegree (p, q).

    Treated as immutable: arithmetic returns new chains.
    """

    __slots__ = ("p", "q", "terms")

    def __init__(self, p: int, q: int, terms: dict | None = None):
        if q not in (0, 1, 2):
            raise ChainError(f"q must be 0, 1 or 2, got {q}")
        if p < 0:
            raise ChainError(f"p must be >= 0, got {p}")
        self.p, self.q = p, q
        clean = {}
        for (verts, morphs), c in (terms or {}).items():
            if len(verts) != p + 1 or len(morphs) != q:
                raise ChainError(f"generator of wrong bidegree in C_{p},{q}")
            if c:
                clean[(verts, morphs)] = c
        self.terms = clean

    @classmethod
    def build(cls, p: int, q: int, items: Iterable[tuple]) -> "BiGradedChain":
        """From ``(coef, vertex tuple in any order, *automorphisms)`` items."""
        acc: dict = {}
        for coef, verts, *morphs in items:
            s = verts if isinstance(verts, OrientedSimplex) else simplex(verts)
            if s.is_zero:
                continue
            _accumulate(acc, (s.vertices, tuple(morphs)), coef * s.sign)
        return cls(p, q, acc)

    # -- arithmetic ---------------------------------------------------------
    def _check_same(self, other):
        if (self.p, self.q) != (other.p, other.q):
            raise ChainError(f"bidegree mismatch ({self.p},{self.q}) vs ({other.p},{other.q})")

    def __add__(self, other):
        self._check_same(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return BiGradedChain(self.p, self.q, acc)

    def __neg__(self):
        return BiGradedChain(self.p, self.q, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return scale(self, k)

    def __eq__(self, other):
        if not isinstance(other, BiGradedChain):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.terms == other.terms

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"BiGradedChain(p={self.p}, q={self.q}, {len(self.terms)} terms)"

    def items(self):
        return self.terms.items()

    def support(self) -> list:
        return list(self.terms)

    def coefficient_of(self, vertices: Sequence[Inversive], *morphs: Automorphism) -> int:
        s = simplex(vertices)
        if s.is_zero:
            return 0
        return s.sign * self.terms.get((s.vertices, tuple(morphs)), 0)


def _accumulate(acc: dict, key, c: int):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def zero(p: int, q: int) -> BiGradedChain:
    return BiGradedChain(p, q)


def add(a: BiGradedChain, b: BiGradedChain) -> BiGradedChain:
    return a + b


def scale(c: BiGradedChain, k: int) -> BiGradedChain:
    return BiGradedChain(c.p, c.q, {key: k * v for key, v in c.terms.items()})


def support(c: BiGradedChain) -> list:
    return c.support()


def coefficient_of(c: BiGradedChain, vertices, *morphs) -> int:
    return c.coefficient_of(vertices, *morphs)


# -- boundary operators ------------------------------------------------------
def boundary_h(c: BiGradedChain) -> BiGradedChain:
    if c.p < 1:
        raise ChainError("horizontal boundary needs p >= 1")
    acc: dict = {}
    for (verts, morphs), coef in c.terms.items():
        for i in range(len(verts)):
            face = verts[:i] + verts[i + 1:]
            _accumulate(acc, (face, morphs), -coef if i % 2 else coef)
    return BiGradedChain(c.p - 1, c.q, acc)


def boundary_v(c: BiGradedChain) -> BiGradedChain:
    """C_{p,1} -> C_{p,0}: sigma . f  |->  f(sigma) - sigma."""
    if c.q != 1:
        raise ChainError("boundary_v expects q = 1")
    acc: dict = {}
    for (verts, (f,)), coef in c.terms.items():
        t = image(f, OrientedSimplex(verts, 1))
        _accumulate(acc, (t.vertices, ()), t.sign * coef)
        _accumulate(acc, (verts, ()), -coef)
    return BiGradedChain(c.p, 0, acc)


def boundary_v2(c: BiGradedChain) -> BiGradedChain:
    """C_{p,2} -> C_{p,1}: sigma . (f, h)  |->  h(sigma) . f - sigma . (f h) + sigma . h."""
    if c.q != 2:
        raise ChainError("boundary_v2 expects q = 2")
    acc: dict = {}
    for (verts, (f, h)), coef in c.terms.items():
        t = image(h, OrientedSimplex(verts, 1))
        _accumulate(acc, (t.vertices, (f,)), t.sign * coef)
        _accumulate(acc, (verts, (compose(f, h),)), -coef)
        _accumulate(acc, (verts, (h,)), coef)
    return BiGradedChain(c.p, 1, acc)


# -- text dump ---------------------------------------------------------------
def _auto_token(f: Automorphism) -> str:
    if f.expr is not None:
        return f.expr or "id"
    return serialize_auto(f)


def dump_chain(c: BiGradedChain, genus: int) -> str:
    lines = [f"genus={genus} p={c.p} q={c.q}"]
    rows = []
    for (verts, morphs), coef in c.terms.items():
        body = f"{coef} * [" + ",".join(str(v) for v in verts) + "]"
        for f in morphs:
            body += " ; " + _auto_token(f)
        rows.append(body)
    lines.extend(sorted(rows))
    return "\n".join(lines) + "\n"


def load_chain(ctx: GenusContext, text: str) -> BiGradedChain:
    from .mapping import Automorphism, from_expr

    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = dict(kv.split("=") for kv in lines[0].split())
    if int(head["genus"]) != ctx.g:
        raise ChainError("dump genus does not match context")
    p, q = int(head["p"]), int(head["q"])
    items = []
    for ln in lines[1:]:
        parts = [s.strip() for s in ln.split(" ; ")]
        coef_s, simp = parts[0].split(" * ")
        verts = [Inversive(parse(v)) for v in simp.strip()[1:-1].split(",")]
        morphs = []
        for tok in parts[1:]:
            if tok == "id" or set(tok) <= set("SsTt"):
                morphs.append(from_expr(ctx, "" if tok == "id" else tok))
            else:
                morphs.append(Automorphism(ctx, [parse(w) for w in tok.split(" | ")]))
        items.append((int(coef_s), verts, *morphs))
    return BiGradedChain.build(p, q, items)


# -- orbits ------------------------------------------------------------------
class Merge(NamedTuple):
    """``auto`` maps the sorted simplex ``source`` to ``sign`` times ``target``."""

    source: tuple
    target: tuple
    auto: Automorphism
    sign: int


class Augmentation(NamedTuple):
    value: int
    modulus: int  # 0: integer-valued class, 2: orientation-reversible class

    @property
    def is_zero(self) -> bool:
        return self.value == 0


class OrbitPartition:
    """Union-find over unoriented vertex sets with orientation parity.

    ``find(x)`` returns ``(root, s)`` where some group element carries the
    sorted simplex of ``root`` to ``s`` times the sorted simplex of ``x``.
    A class is reversible when two such paths disagree in sign.
    """

    def __init__(self):
        self._parent: dict[tuple, tuple] = {}
        self._rel: dict[tuple, int] = {}
        self._reversible: set[tuple] = set()
        self.witnesses: list[Merge] = []
        self.frozen = False

    def __contains__(self, x):
        return x in self._parent

    def __len__(self):
        return len(self._parent)

    def add(self, x: tuple):
        if x not in self._parent:
            self._check_mutable()
            self._parent[x] = x
            self._rel[x] = 1

    def _check_mutable(self):
        if self.frozen:
            raise ChainError("orbit partition is frozen")

    def find(self, x: tuple) -> tuple[tuple, int]:
        if x not in self._parent:
            raise ChainError("simplex not covered by the orbit partition")
        path = []
        while self._parent[x] != x:
            path.append(x)
            x = self._parent[x]
        root, s = x, 1
        for y in reversed(path):  # compress, nearest-to-root first
            s *= self._rel[y]
            self._parent[y], self._rel[y] = root, s
        return root, (self._rel[path[0]] if path else 1)

    def union(self, m: Merge):
        self._check_mutable()
        self.add(m.source)
        self.add(m.target)
        rx, sx = self.find(m.source)
        ry, sy = self.find(m.target)
        want = sx * m.sign  # orientation of target relative to rx
        if rx == ry:
            if sy != want:
                self._reversible.add(rx)
            return
        self.witnesses.append(m)
        self._parent[ry] = rx
        self._rel[ry] = want * sy
        if ry in self._reversible:
            self._reversible.discard(ry)
            self._reversible.add(rx)

    def freeze(self) -> "OrbitPartition":
        self.frozen = True
        return self

    def is_reversible(self, x: tuple) -> bool:
        return self.find(x)[0] in self._reversible

    def classes(self) -> dict[tuple, list[tuple]]:
        out: dict[tuple, list[tuple]] = {}
        for x in self._parent:
            out.setdefault(self.find(x)[0], []).append(x)
        return out

    def same_class(self, x: tuple, y: tuple) -> bool:
        return self.find(x)[0] == self.find(y)[0]

    def replay_witnesses(self) -> bool:
        for m in self.witnesses:
            t = image(m.auto, OrientedSimplex(m.source, 1))
            if t.vertices != m.target or t.sign != m.sign:
                return False
        return True


def _with_inverses(gens: Iterable[Automorphism]) -> list[Automorphism]:
    out = []
    for f in gens:
        out.append(f)
        if f.expr is not None:
            out.append(inverse(f))
    return out


def orbit_partition(seeds: Iterable, gens: Iterable[Automorphism], depth: int,
                    required: Iterable[tuple] = ()) -> OrbitPartition:
    """Sound orbit partition by bounded breadth-first search.

    ``seeds`` are vertex tuples or oriented simplices.  Merges are only made
    along explicit generator applications, so two sets in one class are
    genuinely in one orbit.  ``required`` lists seed pairs that must end up
    merged; otherwise OrbitSearchExhausted is raised.
    """
    part = OrbitPartition()
    moves = _with_inverses(gens)
    frontier = []
    for s in seeds:
        verts = s.vertices if isinstance(s, OrientedSimplex) else simplex(s).vertices
        if verts not in part:
            part.add(verts)
            frontier.append(verts)
    seen = set(frontier)
    queue = deque((x, 0) for x in frontier)
    while queue:
        x, d = queue.popleft()
        if d >= depth:
            continue
        for f in moves:
            t = image(f, OrientedSimplex(x, 1))
            if t.is_zero:
                continue
            part.union(Merge(x, t.vertices, f, t.sign))
            if t.vertices not in seen:
                seen.add(t.vertices)
                queue.append((t.vertices, d + 1))
    for a, b in required:
        a = a.vertices if isinstance(a, OrientedSimplex) else simplex(a).vertices
        b = b.vertices if isinstance(b, OrientedSimplex) else simplex(b).vertices
        if a not in part or b not in part or not part.same_class(a, b):
            raise OrbitSearchExhausted("required orbit merge not found within depth")
    return part.freeze()


def orbit_augmentation(c: BiGradedChain, part: OrbitPartition) -> dict[tuple, Augmentation]:
    """Signed coefficient sum per orbit class (mod 2 on reversible classes)."""
    if c.q != 0:
        raise ChainError("orbit augmentation is defined on C_{p,0}")
    sums: dict[tuple, int] = {}
    for (verts, _), coef in c.terms.items():
        root, s = part.find(verts)
        sums[root] = sums.get(root, 0) + s * coef
    out = {}
    for root, v in sums.items():
        if root in part._reversible:
            out[root] = Augmentation(v % 2, 2)
        else:
            out[root] = Augmentation(v, 0)
    return out


def simplex_str(verts: tuple) -> str:
    return "[" + ",".join(serialize(v.canon) for v in verts) + "]"
