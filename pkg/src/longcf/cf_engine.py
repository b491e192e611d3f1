"""Brute-force continued fraction expansion of sqrt(d) and the Pell unit.

This module is the oracle the family generators are checked against, so it
deliberately knows nothing about them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, NamedTuple, Sequence

from .exact_arith import PerfectSquareError, QuadRat, isqrt
from .words import Word, matrix_of_word

DEFAULT_MAX_PERIOD = 10**6


class PeriodTooLong(RuntimeError):
    pass


@dataclass(frozen=True)
class PeriodicCF:
    """``sqrt(d) = [a0; period, period, ...]`` with ``period`` fundamental."""

    d: int
    a0: int
    period: Word

    @property
    def period_len(self) -> int:
        return len(self.period)

    def __str__(self):
        return f"[{self.a0}; {','.join(map(str, self.period))}]"


class Convergent(NamedTuple):
    A: int
    B: int
    index: int


def surd_states(d: int, P: int = 0, Q: int = 1) -> Iterator[tuple[int, int, int]]:
    """Yield ``(a_n, P_n, Q_n)`` for the expansion of ``(P + sqrt(d)) / Q``.

    Requires ``Q | d - P^2``, which is preserved by the recurrence.
    """
    root, _ = isqrt(d)
    while True:
        a = (root + P) // Q
        yield a, P, Q
        P = a * Q - P
        Q = (d - P * P) // Q


def expand_sqrt(d: int, max_period: int = DEFAULT_MAX_PERIOD) -> PeriodicCF:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    a0, exact = isqrt(d)
    if exact:
        raise PerfectSquareError(f"{d} is a perfect square")
    seen: dict[tuple[int, int], int] = {}
    quotients: list[int] = []
    for n, (a, P, Q) in enumerate(surd_states(d)):
        if (P, Q) in seen:
            start = seen[(P, Q)]
            # sqrt(d) is purely periodic from index 1
            assert start == 1, (d, start)
            return PeriodicCF(d, a0, tuple(quotients[1:]))
        if n > max_period:
            raise PeriodTooLong(f"period of sqrt({d}) exceeds {max_period}")
        seen[(P, Q)] = n
        quotients.append(a)
    raise AssertionError("unreachable")


def convergents(a0: int, word: Sequence[int], upto: int) -> list[Convergent]:
    """Convergents ``A_i / B_i`` of ``[a0; word...]`` for ``i = 0..upto``."""
    if upto < 0 or upto > len(word):
        raise IndexError(f"upto={upto} outside 0..{len(word)}")
    A_prev, A = 0, 1  # A_{-2}, A_{-1}
    B_prev, B = 1, 0
    out = []
    for i, a in enumerate((a0, *word[:upto])):
        A_prev, A = A, a * A + A_prev
        B_prev, B = B, a * B + B_prev
        out.append(Convergent(A, B, i))
    return out


def unit_from_expansion(d: int, max_period: int = DEFAULT_MAX_PERIOD) -> tuple[QuadRat, int]:
    """The unit ``A_{s-1} + B_{s-1} sqrt(d)`` from the (s-1)-th approximant.

    ``s`` is the period length and the 0th approximant is ``a0/1``. This is
    the fundamental unit of Z[sqrt(d)]; its norm is ``(-1)^s``.
    """
    cf = expand_sqrt(d, max_period)
    s = cf.period_len
    last = convergents(cf.a0, cf.period, s - 1)[-1]
    eps = QuadRat(d, last.A, last.B)
    sign = -1 if s % 2 else 1
    if eps.norm() != sign:
        raise AssertionError(f"Pell identity failed for d={d}")
    return eps, sign


def eval_periodic_fixed_point(a0: int, period: Sequence[int], d: int | None = None) -> bool:
    """Exact check that ``alpha = sqrt(w/v)`` is the value of ``[a0; period...]``.

    The expansion satisfies ``alpha = [a0; p_1, ..., p_{s-1}, p_s - a0 + alpha]``,
    i.e. ``alpha = (w + alpha u') / (u + alpha v)`` with ``[[w, u'], [u, v]]`` the
    matrix of ``(a0, p_1, ..., p_{s-1}, p_s - a0)``. When ``p_s = 2 a0`` this
    is the symmetric palindrome matrix. The identity is tested for
    ``alpha = sqrt(w v) / v`` in Q(sqrt(w v)); if ``d`` is given, ``w = d v``
    is required as well.
    """
    if not period or any(p < 1 for p in period):
        return False
    m = matrix_of_word((a0, *period[:-1], period[-1] - a0))
    w, u_top, u, v = m.m11, m.m12, m.m21, m.m22
    if v <= 0 or w <= 0:
        return False
    if d is not None and w != d * v:
        return False
    wv = w * v
    root, exact = isqrt(wv)
    if exact:
        alpha = Fraction(root, v)
        return alpha * (u + alpha * v) == w + alpha * u_top
    alpha = QuadRat(wv, 0, Fraction(1, v))
    return alpha * (u + alpha * v) == w + alpha * u_top


def pell_check(d: int, convergent: Convergent, period_len: int) -> bool:
    return convergent.A ** 2 - d * convergent.B ** 2 == (-1) ** period_len


def coprime(c: Convergent) -> bool:
    return gcd(c.A, c.B) == 1
