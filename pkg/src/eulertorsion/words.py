"""Words in the fundamental group of the closed genus-g surface.

The group is presented on generators a_0, ..., a_{2g-1} with the single
relator a_0 a_1 ... a_{2g-1} a_0^-1 a_1^-1 ... a_{2g-1}^-1.

Letters are encoded as nonzero ints: ``i + 1`` stands for a_i and ``-(i + 1)``
for its inverse.  A word is a plain tuple of letters; every function here
returns freely reduced tuples.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...], freely reduced


class WordError(ValueError):
    """A letter or word is invalid for the genus at hand."""


class SearchLimitExceeded(RuntimeError):
    """A bounded search ran past its configured cap.

    Raised instead of returning a possibly wrong answer; enlarge the caps.
    """


def letter(index: int, sign: int = 1) -> int:
    if sign not in (1, -1):
        raise WordError(f"sign must be +1 or -1, got {sign}")
    return sign * (index + 1)


def letter_index(x: int) -> int:
    return abs(x) - 1


def letter_sign(x: int) -> int:
    return 1 if x > 0 else -1


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(u: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(u))


def shortlex_key(u: Sequence[int]) -> tuple:
    # a_0 < a_0^-1 < a_1 < a_1^-1 < ...
    return (len(u), tuple(2 * (abs(x) - 1) + (x < 0) for x in u))


def serialize(u: Sequence[int]) -> str:
    if not u:
        return "1"
    return " ".join(f"a{x - 1}" if x > 0 else f"A{-x - 1}" for x in u)


def parse(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return ()
    letters = []
    for tok in text.split():
        if len(tok) < 2 or tok[0] not in "aA" or not tok[1:].isdigit():
            raise WordError(f"bad token {tok!r}")
        letters.append(letter(int(tok[1:]), 1 if tok[0] == "a" else -1))
    return free_reduce(letters)


class GenusContext:
    """Surface group of genus ``g`` together with its word-problem machinery.

    For g >= 2 the presentation is C'(1/6) and equality is decided by Dehn's
    algorithm; for g = 1 the group is Z^2 and words are compared by exponent
    sums.
    """

    def __init__(self, g: int, max_word_len: int = 96, max_class_size: int = 20000):
        if not isinstance(g, int) or g < 1:
            raise WordError(f"genus must be an integer >= 1, got {g!r}")
        if max_word_len < 1 or max_class_size < 1:
            raise ValueError("caps must be positive")
        self.g = g
        self.rank = 2 * g
        self.max_word_len = max_word_len
        self.max_class_size = max_class_size
        n = self.rank
        self.relator: Word = tuple(range(1, n + 1)) + tuple(-i for i in range(1, n + 1))
        self.relator_len = 2 * n
        rels = (self.relator, invert(self.relator))
        self.cyclic_table: tuple[Word, ...] = tuple(
            r[k:] + r[:k] for r in rels for k in range(len(r))
        )
        # (x, y) -> (cyclic word, position of x); unique when pieces have length 1
        self._pairs: dict[tuple[int, int], tuple[Word, int]] = {}
        if g >= 2:
            for r in rels:
                L = len(r)
                for k in range(L):
                    pair = (r[k], r[(k + 1) % L])
                    if pair in self._pairs:
                        raise AssertionError(f"piece of length 2 found: {pair}")
                    self._pairs[pair] = (r, k)
        self._nf_cache: dict[Word, Word] = {}

    def __repr__(self):
        return f"GenusContext(g={self.g})"

    # -- plumbing -----------------------------------------------------------
    def validate(self, letters: Iterable[int]) -> tuple:
        letters = tuple(letters)
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise WordError(f"letter {x!r} out of range for genus {self.g}")
        return letters

    def free_reduce(self, letters: Iterable[int]) -> Word:
        return free_reduce(self.validate(letters))

    def word(self, text: str) -> Word:
        return self.validate(parse(text))

    def gen(self, i: int) -> Word:
        if not 0 <= i < self.rank:
            raise WordError(f"generator index {i} out of range")
        return (i + 1,)

    def multiply(self, *words: Sequence[int]) -> Word:
        out: list[int] = []
        for u in words:
            for x in u:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        return tuple(out)

    invert = staticmethod(invert)

    @property
    def a2g_word(self) -> Word:
        """a_{2g} = (a_0 a_1 ... a_{2g-1})^-1."""
        return invert(tuple(range(1, self.rank + 1)))

    def exponent_sums(self, u: Sequence[int]) -> list[int]:
        v = [0] * self.rank
        for x in u:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v

    # -- Dehn's algorithm ---------------------------------------------------
    def _runs(self, u: Word):
        """Yield (start, length, cyclic word, offset) for maximal relator runs."""
        L = self.relator_len
        for p in range(len(u) - 1):
            hit = self._pairs.get((u[p], u[p + 1]))
            if hit is None:
                continue
            r, k = hit
            n = 2
            while n < L and p + n < len(u) and u[p + n] == r[(k + n) % L]:
                n += 1
            yield p, n, r, k

    def _complement_inverse(self, r: Word, k: int, n: int) -> Word:
        # r[k:k+n] * r[k+n:k+L] is a cyclic conjugate of r^{+-1}, hence trivial
        L = self.relator_len
        rest = tuple(r[(k + n + j) % L] for j in range(L - n))
        return invert(rest)

    def _dehn_step(self, u: Word):
        half = self.relator_len // 2
        for p, n, r, k in self._runs(u):
            if n > half:
                return free_reduce(u[:p] + self._complement_inverse(r, k, n) + u[p + n:])
        return None

    def dehn_reduce(self, u: Sequence[int]) -> Word:
        if self.g < 2:
            raise WordError("Dehn's algorithm needs g >= 2; genus 1 is abelian")
        w = free_reduce(u)
        while True:
            nxt = self._dehn_step(w)
            if nxt is None:
                return w
            w = nxt

    def reduce(self, u: Sequence[int]) -> Word:
        """Cheap length-nonincreasing reduction used to keep images short."""
        if self.g == 1:
            x, y = self.exponent_sums(u)
            return self._abelian_word(x, y)
        return self.dehn_reduce(u)

    def is_trivial(self, u: Sequence[int]) -> bool:
        if self.g == 1:
            return not any(self.exponent_sums(u))
        return not self.dehn_reduce(u)

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.is_trivial(self.multiply(u, invert(v)))

    # -- canonical form -----------------------------------------------------
    @staticmethod
    def _abelian_word(x: int, y: int) -> Word:
        a = (1,) * x if x >= 0 else (-1,) * -x
        b = (2,) * y if y >= 0 else (-2,) * -y
        return a + b

    def _half_swaps(self, u: Word):
        half = self.relator_len // 2
        for p, n, r, k in self._runs(u):
            if n >= half:
                yield u[:p] + self._complement_inverse(r, k, half) + u[p + half:]

    def normal_form(self, u: Sequence[int]) -> Word:
        """Shortlex-least geodesic representative of ``u``.

        Dehn-reduces, then explores every word reachable by swapping a half
        relator for its complementary half, restarting whenever a swap
        exposes a shortening.
        """
        if self.g == 1:
            x, y = self.exponent_sums(u)
            return self._abelian_word(x, y)
        start = self.dehn_reduce(u)
        hit = self._nf_cache.get(start)
        if hit is not None:
            return hit
        w = start
        while True:
            if len(w) > self.max_word_len:
                raise SearchLimitExceeded(
                    f"word of length {len(w)} exceeds max_word_len={self.max_word_len}")
            seen = {w}
            queue = deque([w])
            shorter = None
            while queue and shorter is None:
                x = queue.popleft()
                for y in self._half_swaps(x):
                    y = free_reduce(y)
                    if len(y) < len(w) or self._dehn_step(y) is not None:
                        shorter = y
                        break
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
                        if len(seen) > self.max_class_size:
                            raise SearchLimitExceeded(
                                f"canonical search exceeded {self.max_class_size} words")
            if shorter is None:
                break
            w = self.dehn_reduce(shorter)
        nf = min(seen, key=shortlex_key)
        self._nf_cache[start] = nf
        return nf
