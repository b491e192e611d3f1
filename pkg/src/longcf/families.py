"""Closed-form families of square roots with long periods.

Every family maps admissible integer parameters to a radicand ``d``, the
integer part ``a0`` and the full predicted period of ``sqrt(d)``. The period
length depends only on the exponent parameter ``k``.

Words are built in three independent ways:

* :func:`generate` transcribes the expansion of each family directly;
* :func:`derive_by_signflip` substitutes negative (or specialised) parameters
  into the basic four-parameter template and normalises the formal word;
* :func:`printed_period` reproduces the listing exactly as printed in the
  source, typos included, so that the verifier can flag them.

For ``t1``, ``t1a``, ``madden_intro`` and ``t2`` the blocks are also pushed
through :mod:`longcf.props`, which checks the block matrices and yields the
closed-form fundamental unit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Mapping, Optional

from . import props
from .exact_arith import QuadRat
from .words import Word, find_period, normalize


class UnknownFamily(ValueError):
    pass


class Inadmissible(ValueError):
    pass


class NormalizationMismatch(AssertionError):
    pass


class TranscriptionMismatch(AssertionError):
    pass


class FamilyId(str, Enum):
    T1 = "t1"
    T1A = "t1a"
    C_6KM2 = "c_6km2"
    T1B = "t1b"
    C_6K = "c_6k"
    T1C = "t1c"
    C1_8K = "c1_8k"
    C2_8KM4 = "c2_8km4"
    C3_8K = "c3_8k"
    T2 = "t2"
    C6_6KP1 = "c6_6kp1"
    C7_6KP5 = "c7_6kp5"
    MADDEN_INTRO = "madden_intro"

    @classmethod
    def parse(cls, name: "str | FamilyId") -> "FamilyId":
        if isinstance(name, FamilyId):
            return name
        key = name.strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise UnknownFamily(name)

    def __str__(self):
        return self.value


PARAM_NAMES: dict[FamilyId, tuple[str, ...]] = {
    FamilyId.T1: ("a", "m", "s", "k"),
    FamilyId.T1A: ("a", "m", "s", "k"),
    FamilyId.C_6KM2: ("m", "s", "k"),
    FamilyId.T1B: ("a", "m", "s", "k"),
    FamilyId.C_6K: ("m", "s", "k"),
    FamilyId.T1C: ("a", "m", "s", "k"),
    FamilyId.C1_8K: ("m", "s", "k"),
    FamilyId.C2_8KM4: ("s", "k"),
    FamilyId.C3_8K: ("m", "s", "k"),
    FamilyId.T2: ("b", "s", "k"),
    FamilyId.C6_6KP1: ("b", "s", "k"),
    FamilyId.C7_6KP5: ("b", "s", "k"),
    FamilyId.MADDEN_INTRO: ("b", "n", "k"),
}

PERIOD_LENGTH: dict[FamilyId, Callable[[int], int]] = {
    FamilyId.T1: lambda k: 4 * k + 2,
    FamilyId.T1A: lambda k: 6 * k + 2,
    FamilyId.C_6KM2: lambda k: 6 * k - 2,
    FamilyId.T1B: lambda k: 6 * k + 4,
    FamilyId.C_6K: lambda k: 6 * k,
    FamilyId.T1C: lambda k: 8 * k + 4,
    FamilyId.C1_8K: lambda k: 8 * k,
    FamilyId.C2_8KM4: lambda k: 8 * k - 4,
    FamilyId.C3_8K: lambda k: 8 * k,
    FamilyId.T2: lambda k: 2 * k + 1,
    FamilyId.C6_6KP1: lambda k: 6 * k + 1,
    FamilyId.C7_6KP5: lambda k: 6 * k + 5,
    FamilyId.MADDEN_INTRO: lambda k: 4 * k + 2,
}

# (predicate, reason) pairs on top of "all parameters positive integers".
# c_6k needs ms > 1 and c1_8k needs m > 1 although the printed statements
# omit them: m = s = 1 gives d = 2 for c_6k, and m = 1 in c1_8k is exactly
# the 8k-4 family (a zero partial quotient appears).
_HYPOTHESES: dict[FamilyId, list[tuple[Callable[..., bool], str]]] = {
    FamilyId.T1A: [(lambda p: p["a"] > 1, "a>1 required")],
    FamilyId.C_6KM2: [(lambda p: p["m"] * p["s"] > 1, "ms>1 required")],
    FamilyId.T1B: [(lambda p: p["a"] > 1, "a>1 required")],
    FamilyId.C_6K: [(lambda p: p["m"] * p["s"] > 1, "ms>1 required")],
    FamilyId.T1C: [(lambda p: p["a"] > 2, "a>2 required")],
    FamilyId.C1_8K: [(lambda p: p["k"] > 1, "k>1 required"),
                     (lambda p: p["m"] * p["s"] > 1, "ms>1 required"),
                     (lambda p: p["m"] > 1, "m>1 required (m=1 is the 8k-4 family)")],
    FamilyId.C2_8KM4: [(lambda p: p["k"] > 2, "k>2 required")],
    FamilyId.C3_8K: [(lambda p: p["k"] > 1, "k>1 required")],
}

K_MIN = {FamilyId.C1_8K: 2, FamilyId.C2_8KM4: 3, FamilyId.C3_8K: 2}


@dataclass(frozen=True)
class FamilyInstance:
    family: FamilyId
    params: Mapping[str, int]
    d: int
    a0: int
    predicted_period: Word
    predicted_len: int
    predicted_unit: Optional[QuadRat] = field(default=None, compare=False)

    def param_tuple(self) -> tuple[int, ...]:
        return tuple(self.params[name] for name in PARAM_NAMES[self.family])


def admissible(family, params: Mapping[str, int]) -> tuple[bool, str]:
    fid = FamilyId.parse(family)
    expected = set(PARAM_NAMES[fid])
    if set(params) != expected:
        return False, f"parameters must be exactly {','.join(PARAM_NAMES[fid])}"
    for name in PARAM_NAMES[fid]:
        value = params[name]
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            return False, f"{name} must be a positive integer"
    for check, reason in _HYPOTHESES.get(fid, ()):
        if not check(params):
            return False, reason
    return True, "ok"


# --- direct transcriptions --------------------------------------------------
# Each returns (d, a0, period). ``fwd`` is the first half of the period,
# ``mid`` the central part; the second half is the mirror of ``fwd``.

def _mirrored(fwd: list[int], mid: list[int], a0: int) -> Word:
    return tuple(fwd + mid + fwd[::-1] + [2 * a0])


def _t1(a, m, s, k):
    r = 1 + 2 * a * m * s
    a0 = m * (s + a * r ** k)
    d = m * (2 * r ** k + m * (s + a * r ** k) ** 2)
    fwd = []
    for j in range(k):
        fwd += [a * r ** j, 2 * a * m * r ** (k - 1 - j)]
    return d, a0, _mirrored(fwd, [s + a * r ** k], a0)


def _t1a(a, m, s, k):
    r = 2 * a * m * s - 1
    a0 = m * (a * r ** k - s)
    d = m * (2 * r ** k + m * (s - a * r ** k) ** 2)
    fwd = []
    for j in range(k):
        fwd += [a * r ** j - 1, 1, 2 * a * m * r ** (k - 1 - j) - 1]
    return d, a0, _mirrored(fwd, [a * r ** k - s], a0)


def _c_6km2(m, s, k):
    r = 2 * m * s - 1
    a0 = m * (r ** k - s) + 1
    d = m * (2 * r ** k + m * (s - r ** k) ** 2)
    fwd = [2 * m * r ** (k - 1) - 1]
    for j in range(1, k):
        fwd += [r ** j - 1, 1, 2 * m * r ** (k - 1 - j) - 1]
    return d, a0, _mirrored(fwd, [r ** k - s], a0)


def _t1b(a, m, s, k):
    r = 2 * a * m * s - 1
    a0 = m * (s + a * r ** k) - 1
    d = m * (m * (s + a * r ** k) ** 2 - 2 * r ** k)
    fwd = []
    for j in range(k):
        fwd += [1, a * r ** j - 1, 2 * a * m * r ** (k - 1 - j) - 1]
    return d, a0, _mirrored(fwd, [1, s + a * r ** k - 2, 1], a0)


def _c_6k(m, s, k):
    r = 2 * m * s - 1
    a0 = m * (s + r ** k) - 1
    d = m * (m * (s + r ** k) ** 2 - 2 * r ** k)
    fwd = [2 * m * r ** (k - 1)]
    for j in range(1, k):
        fwd += [1, r ** j - 1, 2 * m * r ** (k - 1 - j) - 1]
    return d, a0, _mirrored(fwd, [1, s + r ** k - 2, 1], a0)


def _t1c(a, m, s, k):
    r = 1 + 2 * a * m * s
    a0 = m * (a * r ** k - s) - 1
    d = m * (m * (a * r ** k - s) ** 2 - 2 * r ** k)
    fwd = []
    for j in range(k):
        fwd += [1, a * r ** j - 2, 1, 2 * a * m * r ** (k - 1 - j) - 2]
    return d, a0, _mirrored(fwd, [1, a * r ** k - s - 2, 1], a0)


def _c1_8k(m, s, k):
    r = 1 + 2 * m * s
    a0 = m * (r ** k - s) - 2
    d = m * (m * (r ** k - s) ** 2 - 2 * r ** k)
    fwd = [1, 2 * m * r ** (k - 1) - 3]
    for j in range(1, k):
        fwd += [1, r ** j - 2, 1, 2 * m * r ** (k - 1 - j) - 2]
    return d, a0, _mirrored(fwd, [1, r ** k - s - 2, 1], a0)


def _c2_8km4(s, k):
    r = 1 + 2 * s
    a0 = r ** k - s - 2
    d = (r ** k - s) ** 2 - 2 * r ** k
    fwd = [1, 2 * r ** (k - 1) - 3]
    for j in range(1, k - 1):
        fwd += [1, r ** j - 2, 1, 2 * r ** (k - 1 - j) - 2]
    fwd += [1, r ** (k - 1) - 2, 2]
    return d, a0, _mirrored(fwd, [r ** k - s - 2], a0)


def _c3_8k(m, s, k):
    r = 1 + 4 * m * s
    a0 = m * (2 * r ** k - s) - 1
    d = m * (m * (2 * r ** k - s) ** 2 - 2 * r ** k)
    fwd = [2, 4 * m * r ** (k - 1) - 2]
    for j in range(1, k):
        fwd += [1, 2 * r ** j - 2, 1, 4 * m * r ** (k - 1 - j) - 2]
    return d, a0, _mirrored(fwd, [1, 2 * r ** k - s - 2, 1], a0)


def _t2(b, s, k):
    r = 4 * b * s + 1
    a0 = b * r ** k + s
    d = r ** k + a0 ** 2
    body = []
    for j in range(k):
        body += [2 * b * r ** j, 2 * b * r ** (k - 1 - j)]
    return d, a0, tuple(body + [2 * a0])


def _c6_6kp1(b, s, k):
    r = 4 * b * s - 1
    a0 = b * r ** (2 * k) - s
    d = r ** (2 * k) + a0 ** 2
    body = []
    for j in range(2 * k):
        body += [2 * b * r ** j - 1, 1, 2 * b * r ** (2 * k - 1 - j) - 1]
    return d, a0, tuple(body + [2 * a0])


def _c7_6kp5(b, s, k):
    r = 4 * b * s - 1
    e = 2 * k + 1
    a0 = b * r ** e + s - 1
    d = (b * r ** e + s) ** 2 - r ** e
    fwd = []
    for j in range(k):
        fwd += [1, 2 * b * r ** j - 1, 2 * b * r ** (2 * k - j) - 1]
    centre = 2 * b * r ** k - 1
    return d, a0, _mirrored(fwd, [1, centre, centre, 1], a0)


def _intro_family(b, n, k):
    r = 1 + 2 * b * n
    a0 = b * r ** k + n
    d = a0 ** 2 + 2 * r ** k
    fwd = []
    for j in range(k):
        fwd += [b * r ** j, 2 * b * r ** (k - 1 - j)]
    return d, a0, _mirrored(fwd, [n + b * r ** k], a0)


_TRANSCRIPTIONS = {
    FamilyId.T1: _t1,
    FamilyId.T1A: _t1a,
    FamilyId.C_6KM2: _c_6km2,
    FamilyId.T1B: _t1b,
    FamilyId.C_6K: _c_6k,
    FamilyId.T1C: _t1c,
    FamilyId.C1_8K: _c1_8k,
    FamilyId.C2_8KM4: _c2_8km4,
    FamilyId.C3_8K: _c3_8k,
    FamilyId.T2: _t2,
    FamilyId.C6_6KP1: _c6_6kp1,
    FamilyId.C7_6KP5: _c7_6kp5,
    FamilyId.MADDEN_INTRO: _intro_family,
}


# --- wiring into the block constructions -----------------------------------

def t1_prop_params(a: int, m: int, s: int, k: int) -> tuple[props.Prop1Params, list[Word]]:
    r = 1 + 2 * a * m * s
    p = props.Prop1Params(k=k, u=1 + 2 * a * a * m * r ** (k - 1), v=a, w=2 * a * m, r=r,
                          x=Fraction(s + a * r ** k, 2 * a))
    blocks = [(a * r ** (k - 1 - n), 2 * a * m * r ** n) for n in range(k)]
    return p, blocks


def t1a_prop_params(a: int, m: int, s: int, k: int) -> tuple[props.Prop1Params, list[Word]]:
    r = 2 * a * m * s - 1
    p = props.Prop1Params(k=k, u=2 * a * a * m * r ** (k - 1) - 1, v=a, w=2 * a * m, r=r,
                          x=Fraction(a * r ** k - s, 2 * a))
    blocks = [(a * r ** (k - 1 - n) - 1, 1, 2 * a * m * r ** n - 1) for n in range(k)]
    return p, blocks


def t2_prop_params(b: int, s: int, k: int):
    """Even exponent ``k = 2h`` uses the centre-free construction with h
    blocks; odd ``k = 2h + 1`` the two-centre construction with h blocks."""
    r = 1 + 4 * b * s
    h = k // 2
    u = 1 + 4 * b * b * r ** (k - 1)
    if k % 2 == 0:
        p = props.Prop2Params(k=h, u=u, v=2 * b, x=s + b * r ** k, r=r)
        blocks = [(2 * b * r ** (h - 1 - n), 2 * b * r ** (h + n)) for n in range(h)]
    else:
        p = props.Prop3Params(k=h, u=u, v=2 * b, w=s, q=b * r ** h, r=r)
        blocks = [(2 * b * r ** (h - 1 - n), 2 * b * r ** (h + n + 1)) for n in range(h)]
    return p, blocks


def _prop_route(fid: FamilyId, params: Mapping[str, int]):
    """Return ``((d, a0, period), unit)`` via the block constructions, or None."""
    if fid in (FamilyId.T1, FamilyId.MADDEN_INTRO, FamilyId.T1A):
        if fid is FamilyId.MADDEN_INTRO:
            args = (params["b"], 1, params["n"], params["k"])
        else:
            args = (params["a"], params["m"], params["s"], params["k"])
        build = t1a_prop_params if fid is FamilyId.T1A else t1_prop_params
        p, blocks = build(*args)
        return props.prop1_assemble(p, blocks), props.prop1_unit(p)
    if fid is FamilyId.T2:
        p, blocks = t2_prop_params(params["b"], params["s"], params["k"])
        if isinstance(p, props.Prop2Params):
            return props.prop2_assemble(p, blocks), props.prop2_unit(p)
        return props.prop3_assemble(p, blocks), props.prop3_unit(p)
    return None


def generate(family, params: Mapping[str, int]) -> FamilyInstance:
    fid = FamilyId.parse(family)
    ok, reason = admissible(fid, params)
    if not ok:
        raise Inadmissible(f"{fid}: {reason}")
    args = [params[name] for name in PARAM_NAMES[fid]]
    d, a0, period = _TRANSCRIPTIONS[fid](*args)
    unit = None
    routed = _prop_route(fid, params)
    if routed is not None:
        assembled, unit = routed
        if assembled != (d, a0, period):
            raise TranscriptionMismatch(f"{fid} {dict(params)}: block assembly disagrees")
    return FamilyInstance(fid, dict(params), d, a0, period, len(period), unit)


def expected_length(family, k: int) -> int:
    return PERIOD_LENGTH[FamilyId.parse(family)](k)


# --- literal printed listings ----------------------------------------------

def printed_period(family, params: Mapping[str, int]) -> Word:
    """The period exactly as listed in the printed expansion.

    Differs from :func:`generate` only where the printed listing has a typo:

    * t1a, c_6km2: the mirrored blocks for j = 1 and j = k-1 print the base
      ``1 + 2ams`` (``1 + 2ms``) instead of ``2ams - 1`` (``2ms - 1``);
    * c2_8km4: the mirrored block next to the centre-adjacent one prints
      exponent ``k-1`` instead of ``k-2``, and the last entry prints
      ``2(s + (1+2s)^k) - 4`` instead of ``2 a0``;
    * c6_6kp1: block j = 2k-3 (k >= 3) omits its middle ``1``;
    * c7_6kp5: the last entry prints ``2(b(4bs-1)^(2k+1) + s - 2)``.
    """
    inst = generate(family, params)
    fid, period = inst.family, list(inst.predicted_period)
    p = inst.params
    if fid in (FamilyId.T1A, FamilyId.C_6KM2):
        a = p.get("a", 1)
        m, s, k = p["m"], p["s"], p["k"]
        wrong = 1 + 2 * a * m * s
        half = len(period) // 2
        mirror = period[half:-1]
        # mirror holds blocks j = k-1 .. 1 as (2am r^(k-1-j) - 1, 1, a r^j - 1)
        for j in {1, k - 1} & set(range(1, k)):
            mirror[3 * (k - 1 - j) + 2] = a * wrong ** j - 1
        period = period[:half] + mirror + period[-1:]
    elif fid is FamilyId.C2_8KM4:
        s, k = p["s"], p["k"]
        r = 1 + 2 * s
        period[-1] = 2 * (s + r ** k) - 4
        half = len(period) // 2
        # after the centre: 2, r^(k-1)-2, 1, then 2r-2, 1, r^(k-2)-2, 1, ...
        if k >= 3:
            period[half + 5] = r ** (k - 1) - 2
    elif fid is FamilyId.C6_6KP1:
        k = p["k"]
        if k >= 3:
            j = 2 * k - 3
            del period[3 * j + 1]
    elif fid is FamilyId.C7_6KP5:
        b, s, k = p["b"], p["s"], p["k"]
        period[-1] = 2 * (b * (4 * b * s - 1) ** (2 * k + 1) + s - 2)
    return tuple(period)


# --- derivation by substituting negative parameters -------------------------

def t1_template(a: int, m: int, s: int, k: int) -> tuple[int, int, Word]:
    """The basic four-parameter expansion with arbitrary-sign parameters."""
    return _t1(a, m, s, k)


def t2_template(b: int, s: int, k: int) -> tuple[int, int, Word]:
    return _t2(b, s, k)


def signflip_source(family, params: Mapping[str, int]) -> tuple[str, tuple[int, ...]]:
    """Which template and which (signed) parameters the family comes from."""
    fid = FamilyId.parse(family)
    p = params
    k = p["k"]
    if fid is FamilyId.T1A:
        a, m, s = p["a"], p["m"], p["s"]
        return "t1", (a, m, -s, k) if k % 2 == 0 else (a, -m, s, k)
    if fid is FamilyId.C_6KM2:
        m, s = p["m"], p["s"]
        return "t1", (1, m, -s, k) if k % 2 == 0 else (1, -m, s, k)
    if fid is FamilyId.T1B:
        a, m, s = p["a"], p["m"], p["s"]
        return "t1", (-a, m, s, k) if k % 2 else (-a, -m, -s, k)
    if fid is FamilyId.C_6K:
        m, s = p["m"], p["s"]
        return "t1", (-1, m, s, k) if k % 2 else (-1, -m, -s, k)
    if fid is FamilyId.T1C:
        return "t1", (-p["a"], -p["m"], p["s"], k)
    if fid is FamilyId.C1_8K:
        return "t1", (-1, -p["m"], p["s"], k)
    if fid is FamilyId.C2_8KM4:
        return "t1", (-1, -1, p["s"], k)
    if fid is FamilyId.C3_8K:
        return "t1", (-2, -p["m"], p["s"], k)
    if fid is FamilyId.C6_6KP1:
        return "t2", (p["b"], -p["s"], 2 * k)
    if fid is FamilyId.C7_6KP5:
        return "t2", (-p["b"], p["s"], 2 * k + 1)
    raise Inadmissible(f"{fid} is not obtained by a sign flip")


SIGNFLIP_FAMILIES = (FamilyId.T1A, FamilyId.T1B, FamilyId.T1C,
                     FamilyId.C6_6KP1, FamilyId.C7_6KP5)
SPECIALISED_FAMILIES = (FamilyId.C_6KM2, FamilyId.C_6K, FamilyId.C1_8K,
                        FamilyId.C2_8KM4, FamilyId.C3_8K)


def derive_by_signflip(family, params: Mapping[str, int], copies: int = 5) -> FamilyInstance:
    """Normalise the formal template word and compare with :func:`generate`.

    A few copies of the formal period are normalised as one finite word
    ``[a0; P, P, ...]``; the rewrites are local, so the first two periods of
    the result are those of the infinite word.
    """
    fid = FamilyId.parse(family)
    if fid not in SIGNFLIP_FAMILIES + SPECIALISED_FAMILIES:
        raise Inadmissible(f"{fid} is not obtained by a sign flip")
    ok, reason = admissible(fid, params)
    if not ok:
        raise Inadmissible(f"{fid}: {reason}")
    template, args = signflip_source(fid, params)
    d, a0, formal = (t1_template if template == "t1" else t2_template)(*args)
    word = (a0,) + formal * copies
    normal = normalize(word, budget=max(10**4, 50 * len(word)))
    split = find_period(normal)
    if split is None:
        raise NormalizationMismatch(f"{fid} {dict(params)}: no period after normalising")
    b0, period = split
    derived = FamilyInstance(fid, dict(params), d, b0, period, len(period))
    expected = generate(fid, params)
    if (derived.d, derived.a0, derived.predicted_period) != (
            expected.d, expected.a0, expected.predicted_period):
        raise NormalizationMismatch(f"{fid} {dict(params)}: derived word differs from transcription")
    return derived


def grid(family, param_bound: int, k_bound: int):
    """All admissible parameter maps with entries <= param_bound, k <= k_bound,
    in lexicographic order of the parameter tuple."""
    from itertools import product

    fid = FamilyId.parse(family)
    names = PARAM_NAMES[fid]
    others = [n for n in names if n != "k"]
    k_index = names.index("k")
    out = []
    for values in product(range(1, param_bound + 1), repeat=len(others)):
        for k in range(K_MIN.get(fid, 1), k_bound + 1):
            row = list(values)
            row.insert(k_index, k)
            params = dict(zip(names, row))
            if admissible(fid, params)[0]:
                out.append(params)
    return sorted(out, key=lambda q: tuple(q[n] for n in names))
