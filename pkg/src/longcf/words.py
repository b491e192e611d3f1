"""Words of partial quotients and their 2x2 matrix images.

A word ``(a_0, ..., a_j)`` maps to the product of the matrices
``[[a_i, 1], [1, 0]]`` taken left to right. Formal words may contain zero or
negative entries; :func:`normalize` rewrites them into regular form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Word = tuple[int, ...]

DEFAULT_REWRITE_BUDGET = 10**4


class NotPalindromic(ValueError):
    pass


class NonTerminating(RuntimeError):
    pass


@dataclass(frozen=True)
class Mat2:
    m11: int
    m12: int
    m21: int
    m22: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def quotient(cls, a: int) -> "Mat2":
        return cls(a, 1, 1, 0)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.m11 * o.m11 + self.m12 * o.m21,
                    self.m11 * o.m12 + self.m12 * o.m22,
                    self.m21 * o.m11 + self.m22 * o.m21,
                    self.m21 * o.m12 + self.m22 * o.m22)

    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def transpose(self) -> "Mat2":
        return Mat2(self.m11, self.m21, self.m12, self.m22)

    def is_symmetric(self) -> bool:
        return self.m12 == self.m21

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.m11, self.m12), (self.m21, self.m22)


def as_word(entries: Iterable[int]) -> Word:
    return tuple(int(e) for e in entries)


def matrix_of_word(word: Sequence[int]) -> Mat2:
    m = Mat2.identity()
    for a in word:
        # right-multiplication by [[a,1],[1,0]] just shifts columns
        m = Mat2(a * m.m11 + m.m12, m.m11, a * m.m21 + m.m22, m.m21)
    return m


def reverse(word: Sequence[int]) -> Word:
    return tuple(reversed(word))


def is_palindrome(word: Sequence[int]) -> bool:
    return tuple(word) == tuple(reversed(word))


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return tuple(out)


def lemma1_check(word: Sequence[int]) -> tuple[int, int, int, bool]:
    """Read ``(w, u, v)`` off the symmetric matrix of a palindromic word.

    For a palindrome ``q_0, q_1, ..., q_1, q_0`` of positive integers the
    matrix is ``[[w, u], [u, v]]`` and ``sqrt(w/v) = [q_0; q_1, ..., q_1, 2 q_0]``
    (periodic). The returned flag is the exact fixed-point check of that
    expansion, see :func:`longcf.cf_engine.eval_periodic_fixed_point`.
    """
    from .cf_engine import eval_periodic_fixed_point

    word = as_word(word)
    if len(word) < 2:
        raise ValueError("need at least two partial quotients")
    if not is_palindrome(word):
        raise NotPalindromic(word)
    if any(q < 1 for q in word):
        raise ValueError("entries must be positive")
    m = matrix_of_word(word)
    q0 = word[0]
    ok = m.is_symmetric() and eval_periodic_fixed_point(q0, word[1:-1] + (2 * q0,))
    return m.m11, m.m12, m.m22, ok


def eval_finite(word: Sequence[int]) -> Fraction:
    """Exact value of the finite continued fraction ``[w_0; w_1, ..., w_n]``."""
    if not word:
        raise ValueError("empty word has no value")
    value = Fraction(word[-1])
    for a in reversed(word[:-1]):
        if value == 0:
            raise ZeroDivisionError("tail evaluates to zero")
        value = a + 1 / value
    return value


def normalize(word: Sequence[int], budget: int = DEFAULT_REWRITE_BUDGET) -> Word:
    """Rewrite a formal word until every entry after the first is >= 1.

    Rules, always applied at the leftmost offending position ``i >= 1``:

    * ``[.., n, 0, p, ..] -> [.., n + p, ..]``
    * ``[.., m, -n, tail] -> [.., m - 1, 1, n - 1, -tail]`` (tail negated)
    * a trailing ``[.., x, 0]`` is dropped entirely (the pair acts as the
      identity on the value of the prefix).
    """
    w = list(word)
    steps = 0
    while True:
        i = next((j for j in range(1, len(w)) if w[j] <= 0), None)
        if i is None:
            return tuple(w)
        steps += 1
        if steps > budget:
            raise NonTerminating(f"more than {budget} rewrites")
        if w[i] == 0:
            if i + 1 < len(w):
                w[i - 1:i + 2] = [w[i - 1] + w[i + 1]]
            else:
                del w[i - 1:]
        else:
            n = -w[i]
            w[i - 1:] = [w[i - 1] - 1, 1, n - 1] + [-x for x in w[i + 1:]]


def find_period(word: Sequence[int]) -> tuple[int, Word] | None:
    """Split ``[a_0; P, P, ...]`` into ``(a_0, P)``.

    ``P`` is the shortest block that ends in ``2 a_0`` and is immediately
    repeated; ``None`` if the word is too short to show two copies.
    """
    w = tuple(word)
    if not w:
        return None
    for length in range(1, (len(w) - 1) // 2 + 1):
        if w[length] == 2 * w[0] and w[1:1 + length] == w[1 + length:1 + 2 * length]:
            return w[0], w[1:1 + length]
    return None
