"""Assembly of long periods from the blocks N_0, ..., N_{k-1}.

Three constructions share one pattern: a 2x2 integer matrix ``N_0`` is
conjugated by ``C = diag(r, 1)`` to give ``N_n = C^{-n} N_0 C^n``. When every
``N_n`` is the matrix of a word of positive partial quotients, the words are
concatenated (forward, then a centre, then mirrored) into the period of
``sqrt(d)``. Each construction also has a closed-form fundamental unit.

The diagonalising matrices of the underlying identities are not modelled;
correctness is checked against :mod:`longcf.cf_engine` instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import PerfectSquareError, QuadRat
from .words import Mat2, Word, as_word, concat, lemma1_check, matrix_of_word, reverse


class HypothesisViolated(ValueError):
    pass


class NonUnit(ArithmeticError):
    pass


def _require_positive(**values):
    for name, value in values.items():
        if not isinstance(value, int) or value < 1:
            raise HypothesisViolated(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Prop1Params:
    """Central partial quotient ``2 v x``; ``d = w r^k / v + w^2 x^2``."""

    k: int
    u: int
    v: int
    w: int
    r: int
    x: Fraction

    def __post_init__(self):
        _require_positive(k=self.k, u=self.u, v=self.v, w=self.w, r=self.r)
        x = Fraction(self.x)
        object.__setattr__(self, "x", x)
        if x <= 0:
            raise HypothesisViolated("x must be positive")
        if (self.r * self.w) % self.v:
            raise HypothesisViolated("r w / v must be an integer")
        if (self.w * x).denominator != 1 or (2 * self.v * x).denominator != 1:
            raise HypothesisViolated("w x and 2 v x must be integers")

    @property
    def d(self) -> int:
        return self.w * self.r ** self.k // self.v + int(self.w * self.x) ** 2

    @property
    def a0(self) -> int:
        return int(self.w * self.x)

    def n_matrix(self, n: int) -> Mat2:
        k, u, v, w, r = self.k, self.u, self.v, self.w, self.r
        return Mat2(u, r ** (k - 1 - n) * v, r ** n * w, r * u - int(2 * v * w * self.x))


@dataclass(frozen=True)
class Prop2Params:
    """No central partial quotient; ``d = r^(2k) + x^2``."""

    k: int
    u: int
    v: int
    x: int
    r: int

    def __post_init__(self):
        _require_positive(k=self.k, u=self.u, v=self.v, x=self.x, r=self.r)

    @property
    def d(self) -> int:
        return self.r ** (2 * self.k) + self.x ** 2

    @property
    def a0(self) -> int:
        return self.x

    def n_matrix(self, n: int) -> Mat2:
        k, u, v, x, r = self.k, self.u, self.v, self.x, self.r
        return Mat2(u, r ** (k - 1 - n) * v, r ** (k + n) * v, r * u - 2 * v * x)


@dataclass(frozen=True)
class Prop3Params:
    """Two central partial quotients ``2q, 2q``.

    ``k = 0`` is accepted: there are no blocks and the period is
    ``2q, 2q, 2 a0``.
    """

    k: int
    u: int
    v: int
    w: int
    q: int
    r: int

    def __post_init__(self):
        _require_positive(u=self.u, v=self.v, w=self.w, q=self.q, r=self.r)
        if not isinstance(self.k, int) or self.k < 0:
            raise HypothesisViolated("k must be a non-negative integer")

    @property
    def gamma(self) -> int:
        return self.q * (self.r ** self.k + 4 * self.q * self.w)

    @property
    def d(self) -> int:
        rk = self.r ** self.k
        return rk * (rk + 4 * self.q * self.w) + (self.w + self.gamma) ** 2

    @property
    def a0(self) -> int:
        return self.w + self.gamma

    def n_matrix(self, n: int) -> Mat2:
        k, u, v, w, q, r = self.k, self.u, self.v, self.w, self.q, self.r
        rk = r ** k
        return Mat2(u, r ** (k - 1 - n) * v,
                    r ** n * v * (rk + 4 * q * w),
                    r * u - 2 * q * rk * v - 2 * (1 + 4 * q * q) * v * w)


def _check_blocks(p, n_words: Sequence[Sequence[int]]) -> list[Word]:
    if len(n_words) != p.k:
        raise HypothesisViolated(f"expected {p.k} blocks, got {len(n_words)}")
    blocks = [as_word(w) for w in n_words]
    for n, block in enumerate(blocks):
        if not block or any(a < 1 for a in block):
            raise HypothesisViolated(f"block {n} must be nonempty with positive entries")
        if matrix_of_word(block) != p.n_matrix(n):
            raise HypothesisViolated(
                f"block {n}: matrix {matrix_of_word(block).rows()} != N_{n} {p.n_matrix(n).rows()}")
    return blocks


def _assemble(blocks: list[Word], centre: Word, last: int) -> Word:
    forward = concat(*reversed(blocks))  # N_{k-1} ... N_0
    mirror = concat(*(reverse(b) for b in blocks))  # <-N_0 ... <-N_{k-1}
    return concat(forward, centre, mirror, (last,))


def _confirm_radicand(d: int, a0: int, period: Word):
    # the palindrome (a0, period minus last, a0) must give w / v = d
    w, _, v, ok = lemma1_check((a0, *period[:-1], a0))
    if not ok or w != d * v:
        raise HypothesisViolated(f"assembled word does not expand sqrt({d})")


def prop1_assemble(p: Prop1Params, n_words: Sequence[Sequence[int]]) -> tuple[int, int, Word]:
    blocks = _check_blocks(p, n_words)
    period = _assemble(blocks, (int(2 * p.v * p.x),), 2 * p.a0)
    _confirm_radicand(p.d, p.a0, period)
    return p.d, p.a0, period


def prop2_assemble(p: Prop2Params, n_words: Sequence[Sequence[int]]) -> tuple[int, int, Word]:
    blocks = _check_blocks(p, n_words)
    period = _assemble(blocks, (), 2 * p.a0)
    _confirm_radicand(p.d, p.a0, period)
    return p.d, p.a0, period


def prop3_assemble(p: Prop3Params, n_words: Sequence[Sequence[int]]) -> tuple[int, int, Word]:
    blocks = _check_blocks(p, n_words)
    period = _assemble(blocks, (2 * p.q, 2 * p.q), 2 * p.a0)
    _confirm_radicand(p.d, p.a0, period)
    return p.d, p.a0, period


def _as_unit(value: QuadRat) -> QuadRat:
    if not value.is_unit() or value <= 1:
        raise NonUnit(f"{value} is not a unit exceeding 1")
    return value


def _sqrt(d: int) -> QuadRat:
    try:
        return QuadRat.sqrt(d)
    except PerfectSquareError as exc:
        raise NonUnit(str(exc)) from exc


def prop1_unit(p: Prop1Params) -> QuadRat:
    """``w (r u + v(-w x + sqrt d))^(2k) / (v (-w x + sqrt d)^2)``."""
    t = _sqrt(p.d) - p.w * p.x
    return _as_unit(p.w * (p.r * p.u + p.v * t) ** (2 * p.k) / (p.v * t * t))


def prop2_unit(p: Prop2Params) -> QuadRat:
    """``(x + sqrt d) (u + v(-x + sqrt d)/r)^(2k)``."""
    root = _sqrt(p.d)
    return _as_unit((p.x + root) * (p.u + p.v * (root - p.x) / p.r) ** (2 * p.k))


def prop3_unit(p: Prop3Params) -> QuadRat:
    """``(u + v(sqrt d - w - g)/r)^(2k) (sqrt d - w + g) (sqrt d + w + g)^2 / (g/q)^2``.

    ``g = q (r^k + 4qw)``. Dividing by ``g^2`` instead of ``(g/q)^2`` is off
    by the factor ``q^2`` and does not give an algebraic integer unless q = 1.
    """
    root = _sqrt(p.d)
    g = p.gamma
    scale = p.r ** p.k + 4 * p.q * p.w  # g / q
    head = (p.u + p.v * (root - p.w - g) / p.r) ** (2 * p.k)
    return _as_unit(head * (root - p.w + g) * (root + p.w + g) ** 2 / (scale * scale))


def diagonal_factors(d: int, m: Mat2) -> tuple[QuadRat, QuadRat]:
    """Solve ``m = [[-s, s], [1, 1]] diag(alpha, beta) [[-s, 1], [s, 1]]``, s = sqrt d.

    The product is ``[[d(alpha+beta), s(beta-alpha)], [s(beta-alpha), alpha+beta]]``,
    so a solution exists iff ``m`` is symmetric with ``m11 = d m22``.
    """
    if not m.is_symmetric() or m.m11 != d * m.m22:
        raise ValueError("matrix is not of the form P(alpha, beta)")
    s = _sqrt(d)
    beta = (m.m22 + m.m12 / s) / 2
    alpha = m.m22 - beta
    return alpha, beta


def diagonal_product(d: int, alpha: QuadRat, beta: QuadRat) -> tuple[QuadRat, QuadRat, QuadRat, QuadRat]:
    s = _sqrt(d)
    left = ((-s, s), (1 + 0 * s, 1 + 0 * s))
    right = ((-s, 1 + 0 * s), (s, 1 + 0 * s))
    mid = ((alpha, 0 * s), (0 * s, beta))

    def mul(x, y):
        return tuple(tuple(sum((x[i][t] * y[t][j] for t in range(2)), 0 * s) for j in range(2))
                     for i in range(2))

    (p11, p12), (p21, p22) = mul(mul(left, mid), right)
    return p11, p12, p21, p22


def unit_from_palindrome(a0: int, period: Sequence[int]) -> QuadRat:
    """The unit ``2 sqrt(d) beta`` read off the palindrome matrix of the period."""
    w, u, v, ok = lemma1_check((a0, *period[:-1], a0))
    if not ok or w % v:
        raise ValueError("period does not expand the square root of an integer")
    d = w // v
    _, beta = diagonal_factors(d, Mat2(w, u, u, v))
    return 2 * _sqrt(d) * beta
