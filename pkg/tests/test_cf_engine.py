from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from longcf.cf_engine import (
    PeriodTooLong,
    coprime,
    convergents,
    eval_periodic_fixed_point,
    expand_sqrt,
    pell_check,
    surd_states,
    unit_from_expansion,
)
from longcf.exact_arith import PerfectSquareError, QuadRat, is_square

non_squares = st.integers(2, 10**7).filter(lambda n: not is_square(n))


def floor_of(x: QuadRat) -> int:
    lo, hi = -1, 1
    while QuadRat(x.d, hi, 0) <= x:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        lo, hi = (mid, hi) if QuadRat(x.d, mid, 0) <= x else (lo, mid)
    return lo


def naive_period(d):
    """Independent oracle: iterate x -> 1/(x - floor x) in Q(sqrt d)."""
    x = QuadRat.sqrt(d)
    a0 = floor_of(x)
    x = 1 / (x - a0)
    out = []
    while True:
        a = floor_of(x)
        out.append(a)
        if a == 2 * a0:
            return a0, tuple(out)
        x = 1 / (x - a)


@pytest.mark.parametrize("d,a0,period", [
    (2, 1, (2,)),
    (22, 4, (1, 2, 4, 2, 1, 8)),
    (41, 6, (2, 2, 12)),
    (94, 9, (1, 2, 3, 1, 1, 5, 1, 8, 1, 5, 1, 1, 3, 2, 1, 18)),
])
def test_expand_known(d, a0, period):
    cf = expand_sqrt(d)
    assert (cf.a0, cf.period) == (a0, period)
    assert str(expand_sqrt(22)) == "[4; 1,2,4,2,1,8]"


@given(st.integers(2, 3000).filter(lambda n: not is_square(n)))
def test_expand_matches_naive(d):
    cf = expand_sqrt(d)
    assert (cf.a0, cf.period) == naive_period(d)


def test_errors():
    with pytest.raises(PerfectSquareError):
        expand_sqrt(4)
    with pytest.raises(ValueError):
        expand_sqrt(1)
    with pytest.raises(PeriodTooLong):
        expand_sqrt(94, max_period=5)


@given(non_squares)
def test_period_structure_and_pell(d):
    cf = expand_sqrt(d)
    s = cf.period_len
    assert cf.period[-1] == 2 * cf.a0
    body = cf.period[:-1]
    assert body == body[::-1]
    last = convergents(cf.a0, cf.period, s - 1)[-1]
    assert pell_check(d, last, s)
    assert coprime(last)


@given(non_squares)
def test_restart_after_one_period_is_idempotent(d):
    cf = expand_sqrt(d)
    s = cf.period_len
    states = surd_states(d)
    seq = [next(states) for _ in range(2 * s + 1)]
    assert seq[s + 1][1:] == seq[1][1:]
    _, P, Q = seq[s]
    restarted = surd_states(d, P, Q)
    next(restarted)
    assert tuple(next(restarted)[0] for _ in range(s)) == cf.period


def test_convergent_indexing():
    cs = convergents(4, (1, 2, 4, 2, 1, 8), 5)
    assert cs[0] == (4, 1, 0)
    assert (cs[5].A, cs[5].B) == (197, 42)
    with pytest.raises(IndexError):
        convergents(4, (1, 2), 3)


@given(non_squares)
def test_convergents_approximate(d):
    cf = expand_sqrt(d)
    for c in convergents(cf.a0, cf.period, min(cf.period_len, 6)):
        # successive convergents bracket sqrt(d): the sign alternates exactly
        sign = QuadRat(d, Fraction(c.A, c.B), -1).sign()
        assert sign == (-1 if c.index % 2 == 0 else 1)


@pytest.mark.parametrize("d,unit,sign", [
    (2, (1, 1), -1),
    (22, (197, 42), 1),
    (41, (32, 5), -1),
    (446005190022, (149199899813252915906267542273, 223407925198820626278032), 1),
])
def test_unit_from_expansion(d, unit, sign):
    eps, s = unit_from_expansion(d)
    assert (eps.a, eps.b) == unit and s == sign


def test_fixed_point_examples():
    assert eval_periodic_fixed_point(1, (2,), d=2)
    assert eval_periodic_fixed_point(4, (1, 2, 4, 2, 1, 8), d=22)
    assert not eval_periodic_fixed_point(1, (3,), d=2)
    assert not eval_periodic_fixed_point(1, ())
    assert not eval_periodic_fixed_point(1, (0, 2))


@given(non_squares)
def test_fixed_point_accepts_oracle(d):
    cf = expand_sqrt(d)
    assert eval_periodic_fixed_point(cf.a0, cf.period, d=d)
    assert not eval_periodic_fixed_point(cf.a0, cf.period, d=d + 1)
