"""Exact integer helpers and arithmetic in Q(sqrt(d)).

Everything here is exact: Python ints and ``fractions.Fraction`` only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

Rational = Union[int, Fraction]

DEFAULT_SQUARE_FREE_BOUND = 10**5


class PerfectSquareError(ValueError):
    """Raised when an operation needs a non-square radicand."""


class RadicandMismatch(ValueError):
    pass


def isqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), exact)`` for a non-negative integer."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    root = math.isqrt(n)
    return root, root * root == n


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n)[1]


@total_ordering
@dataclass(frozen=True)
class QuadRat:
    """The element ``a + b*sqrt(d)`` of Q(sqrt(d)), d a positive non-square."""

    d: int
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if self.d <= 0 or is_square(self.d):
            raise PerfectSquareError(f"radicand {self.d} must be a positive non-square")
        # Fraction already keeps lowest terms with a positive denominator
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def sqrt(cls, d: int) -> "QuadRat":
        return cls(d, 0, 1)

    def _coerce(self, other) -> "QuadRat":
        if isinstance(other, QuadRat):
            if other.d != self.d:
                raise RadicandMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadRat(self.d, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadRat(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadRat(self.d,
                       self.a * o.a + self.d * self.b * o.b,
                       self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadRat":
        return QuadRat(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadRat":
        n = self.norm()
        if n == 0:
            # only zero has norm 0 since d is not a square
            raise ZeroDivisionError("inverse of zero in Q(sqrt(d))")
        return QuadRat(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> "QuadRat":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadRat(self.d, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign of the real number a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = self.a * self.a, self.d * self.b * self.b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __lt__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadRat):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def is_integral(self) -> bool:
        """True when both coordinates are integers (element of Z[sqrt(d)])."""
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_unit(self) -> bool:
        return self.is_integral() and abs(self.norm()) == 1

    def __str__(self):
        def fmt(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"({q})"
        if self.b == 0:
            return fmt(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{fmt(self.a)} {sign} {fmt(abs(self.b))}*sqrt({self.d})"


def quad_mul(x: QuadRat, y: QuadRat) -> QuadRat:
    return x * y


def quad_inv(x: QuadRat) -> QuadRat:
    return x.inverse()


def quad_pow(x: QuadRat, e: int) -> QuadRat:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    return x ** e


def norm(x: QuadRat) -> Fraction:
    return x.norm()


# --- square-freeness ------------------------------------------------------

@dataclass(frozen=True)
class SquareFreeStatus:
    """Outcome of a bounded trial-division probe.

    ``kind`` is one of ``"square_free"``, ``"has_square_factor"`` (``value`` is
    the prime p with p^2 | n) or ``"unknown"`` (``value`` is the trial bound).
    """

    kind: str
    value: int | None = None

    @classmethod
    def square_free(cls) -> "SquareFreeStatus":
        return cls("square_free")

    @classmethod
    def square_factor(cls, p: int) -> "SquareFreeStatus":
        return cls("has_square_factor", p)

    @classmethod
    def unknown(cls, bound: int) -> "SquareFreeStatus":
        return cls("unknown", bound)

    @property
    def has_square_factor(self) -> bool:
        return self.kind == "has_square_factor"

    def __str__(self):
        return self.kind if self.value is None else f"{self.kind}:{self.value}"


@lru_cache(maxsize=8)
def primes_up_to(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytes(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def square_free_probe(n: int, bound: int = DEFAULT_SQUARE_FREE_BOUND) -> SquareFreeStatus:
    """Trial-divide ``n`` by the primes up to ``bound``.

    Reports the first prime whose square divides ``n``. If the cofactor left
    after removing all small primes is 1 or provably prime (at most bound^2),
    ``n`` is square-free; otherwise the answer is unknown.
    """
    if n < 2 or bound < 2:
        raise ValueError("need n >= 2 and bound >= 2")
    rest = n
    for p in primes_up_to(bound):
        if p * p > rest:
            break
        if rest % p == 0:
            rest //= p
            if rest % p == 0:
                return SquareFreeStatus.square_factor(p)
    if rest == 1 or rest <= bound * bound:
        return SquareFreeStatus.square_free()
    return SquareFreeStatus.unknown(bound)
