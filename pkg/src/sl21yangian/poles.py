"""Physical-strip poles of the dressed R-matrix.

Two independent routes:

* :func:`classify_poles` applies the per-channel rule tables (generic,
  ``c1`` integer, ``c2`` integer) literally;
* :func:`pole_oracle` counts orders directly: half the Gamma pole orders of
  the sixteen-Gamma ratio under the square root plus the order of the
  rational channel coefficient.

Integer and fractional parts use the floor convention ``a = [a] + {a}``
with ``{a}`` in ``[0, 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

P1, P2, P3 = "P1", "P2", "P3"
CHANNELS = (P1, P2, P3)
HALF = Fraction(1, 2)


class UnsupportedTaxonomyError(ValueError):
    """Both parameters integer: outside the case analysis."""


class DegenerateProjectorError(ValueError):
    """``c1 + c2`` in {0, -1, -2}: projectors are singular."""


class BranchPointError(ArithmeticError):
    """Half-integer total order from the oracle."""


def _q(a) -> Fraction:
    if isinstance(a, float):
        raise TypeError("pass exact rationals, not floats")
    return Fraction(a)


def ipart(a) -> int:
    return math.floor(_q(a))


def fpart(a) -> Fraction:
    a = _q(a)
    return a - math.floor(a)


def is_int(a) -> bool:
    return _q(a).denominator == 1


def m_funcs(a) -> tuple[int, int, int, int, int, int]:
    n = ipart(a)
    return (min(-n, n + 2, 0), max(-n - 3, n - 1, 1),
            min(-n, n + 2, -1), max(-n - 3, n - 1, 0),
            max(-n - 5, n - 1, 0), min(-n, n + 2, -2))


def m(k: int, a) -> int:
    return m_funcs(a)[k - 1]


# ----------------------------------------------------------------------
# lattices
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Lattices:
    """Potential pole and zero families of the scalar factor (``n >= 1``)."""

    c1: Fraction
    c2: Fraction

    @property
    def dc(self) -> Fraction:
        return (self.c2 - self.c1) / 2

    @property
    def ctilde(self) -> Fraction:
        return (self.c1 + self.c2) / 2

    def pole_families(self) -> tuple[Callable[[int], Fraction], ...]:
        dc, ct = self.dc, self.ctilde
        return (lambda n: 2 * dc - 2 * n, lambda n: -2 * dc - 2 * n,
                lambda n: 2 * ct + 2 * n + 2, lambda n: -2 * ct + 2 * n - 2)

    def zero_families(self) -> tuple[Callable[[int], Fraction], ...]:
        dc, ct = self.dc, self.ctilde
        return (lambda n: -2 * dc + 2 * n, lambda n: 2 * dc + 2 * n,
                lambda n: -2 * ct - 2 * n - 2, lambda n: 2 * ct - 2 * n + 2)

    @staticmethod
    def _in_strip(fam: Callable[[int], Fraction]) -> list[Fraction]:
        # step is +-2, so n only needs to run until the value has crossed the strip
        bound = math.ceil(abs(fam(1)) / 2) + 2
        return [fam(n) for n in range(1, bound + 1) if 0 < fam(n) < 1]

    def strip_poles(self) -> set[Fraction]:
        return {x for f in self.pole_families() for x in self._in_strip(f)}

    def strip_zeros(self) -> set[Fraction]:
        return {x for f in self.zero_families() for x in self._in_strip(f)}


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleEntry:
    x: Fraction
    order: int
    provenance: str


@dataclass(frozen=True)
class PoleReport:
    c1: Fraction
    c2: Fraction
    channel: str
    entries: tuple[PoleEntry, ...] = field(default_factory=tuple)

    def locations(self) -> dict[Fraction, int]:
        return {e.x: e.order for e in self.entries}

    def __eq__(self, other):
        if not isinstance(other, PoleReport):
            return NotImplemented
        return (self.c1, self.c2, self.channel, self.locations()) == \
            (other.c1, other.c2, other.channel, other.locations())

    def __hash__(self):
        return hash((self.c1, self.c2, self.channel, tuple(sorted(self.locations().items()))))


def _validate(c1, c2, channel):
    c1, c2 = _q(c1), _q(c2)
    if channel not in CHANNELS:
        raise ValueError(f"unknown channel {channel!r}")
    if c1 + c2 in (0, -1, -2):
        raise DegenerateProjectorError(f"c1 + c2 = {c1 + c2}: projectors are singular")
    return c1, c2


# ----------------------------------------------------------------------
# rule tables
# ----------------------------------------------------------------------

# S-threshold: pole at {S} needs S < SUM_LOW, pole at 1-{S} needs S > SUM_HIGH
# Order counting fixes the P1 lower threshold at 1 for the integer tables
# and at -1 in the generic table.
SUM_LOW = {P1: -1, P2: -3, P3: -1}
SUM_LOW_INT = {P1: 1, P2: -3, P3: -1}
SUM_HIGH = {P1: 1, P2: -1, P3: -1}

# for each channel: (m-index for the {D}/{S} double threshold,
#                    m-index for the 1-{D}/1-{S} double threshold,
#                    offset L so that 1-{D} is cancelled at  c_int <= -[c_other] - L)
INT_TABLE = {P1: (1, 2, 3), P2: (6, 5, 5), P3: (3, 5, 3)}

# index of the pole a "double" rule coincides with
PARTNER_C1 = (2, 3, 0, 1)
PARTNER_C2 = (3, 2, 1, 0)

_NAMES = ("{c2-c1}", "1-{c2-c1}", "{c2+c1}", "1-{c2+c1}")


def _locations(c1, c2):
    D, S = c2 - c1, c2 + c1
    return (fpart(D), 1 - fpart(D), fpart(S), 1 - fpart(S))


def _exists(c1, c2, channel, low=SUM_LOW) -> tuple[bool, bool, bool, bool]:
    D, S = c2 - c1, c2 + c1
    return (D > 2 and ipart(D) % 2 == 0 and not is_int(D),
            D < -2 and ipart(D) % 2 == 1 and not is_int(D),
            S < low[channel] and ipart(S) % 2 == 0 and not is_int(S),
            S > SUM_HIGH[channel] and ipart(S) % 2 == 1 and not is_int(S))


def _grade(value, double_if, simple_if) -> int:
    if double_if(value):
        return 2
    if simple_if(value):
        return 1
    return 0


def _int_orders(ci: Fraction, other: Fraction, channel: str, c1_int: bool) -> list[int]:
    """Orders of the four candidate poles when ``ci`` is the integer parameter.

    Returned in the order of the rule that fires for each location:
    the ``c1``-integer table lists ({D}, 1-{D}, {S}, 1-{S}); the
    ``c2``-integer table is its mirror with the roles of {D} and 1-{D}
    exchanged.
    """
    a_idx, b_idx, off = INT_TABLE[channel]
    n = ipart(other)
    A, M = m(a_idx, other), m(b_idx, other)
    # "left" rule: double below A, simple in [A, -[o]), cancelled otherwise
    left = _grade(ci, lambda v: v < A, lambda v: A <= v < -n)
    # "right" rule: double above M, simple in (-[o]-off, M], cancelled otherwise
    if channel == P3 and n < -3:
        lo = -n - 3
        # the c1- and c2-integer tables use different lower bounds here
        low2 = m(5, other) if c1_int else m(4, other)
        # for c1 integer the endpoint -[o] - 3 itself is cancelled
        right = _grade(ci, lambda v: v > lo,
                       (lambda v: low2 < v < lo) if c1_int else (lambda v: low2 < v <= lo))
    elif channel == P3:
        right = _grade(ci, lambda v: v > M, lambda v: -n - 3 < v <= M)
    else:
        right = _grade(ci, lambda v: v > M, lambda v: -n - off < v <= M)
    sum_left = _grade(ci, lambda v: v < A, lambda v: A <= v < n + 2)
    sum_right = _grade(ci, lambda v: v > M, lambda v: n - 1 < v <= M)
    if c1_int:
        return [left, right, sum_left, sum_right]
    return [right, left, sum_left, sum_right]


def classify_poles(c1, c2, channel: str) -> PoleReport:
    """Physical-strip poles of ``channel`` from the rule tables."""
    c1, c2 = _validate(c1, c2, channel)
    i1, i2 = is_int(c1), is_int(c2)
    if i1 and i2:
        raise UnsupportedTaxonomyError("c1 and c2 both integer is not covered by the rule tables")
    locs = _locations(c1, c2)
    exists = _exists(c1, c2, channel, SUM_LOW_INT if (i1 or i2) else SUM_LOW)
    if not (i1 or i2):
        orders = [1 if e else 0 for e in exists]
        case = "generic"
    else:
        graded = _int_orders(c1 if i1 else c2, c2 if i1 else c1, channel, i1)
        partner = PARTNER_C1 if i1 else PARTNER_C2
        # a double pole is two coinciding poles, so both must be allowed to exist
        orders = [0 if not e else (1 if o == 2 and not exists[partner[k]] else o)
                  for k, (o, e) in enumerate(zip(graded, exists))]
        case = "c1-integer" if i1 else "c2-integer"
    merged: dict[Fraction, tuple[int, list[str]]] = {}
    for x, o, name in zip(locs, orders, _NAMES):
        if not o or not 0 < x < 1:
            continue
        prev, names = merged.get(x, (0, []))
        if case == "generic":
            merged[x] = (prev + o, names + [name])
        else:
            # coinciding rules describe the same pole; "double" already counts both
            merged[x] = (max(prev, o), names + [name])
    entries = tuple(PoleEntry(x, o, f"{channel}:{case}:" + "+".join(n))
                    for x, (o, n) in sorted(merged.items()))
    return PoleReport(c1, c2, channel, entries)


# ----------------------------------------------------------------------
# oracle
# ----------------------------------------------------------------------

# Gamma arguments of the squared prefactor as (constant, coefficient of x/2)
# with constants written in ctilde (t) and dc (d).
_SQ_NUM = ((lambda t, d: 1 + t, -1), (lambda t, d: 2 + t, -1), (lambda t, d: -1 - t, -1),
           (lambda t, d: -t, -1), (lambda t, d: d, 1), (lambda t, d: 1 + d, 1),
           (lambda t, d: -d, 1), (lambda t, d: 1 - d, 1))
_SQ_DEN = ((lambda t, d: -d, -1), (lambda t, d: 1 - d, -1), (lambda t, d: d, -1),
           (lambda t, d: 1 + d, -1), (lambda t, d: 1 + t, 1), (lambda t, d: 2 + t, 1),
           (lambda t, d: -1 - t, 1), (lambda t, d: -t, 1))


def _gamma_order(z: Fraction) -> int:
    """Zero order of Gamma at ``z`` (``-1`` on a pole, else 0)."""
    return -1 if z.denominator == 1 and z <= 0 else 0


def prefactor_order(x, c1, c2) -> Fraction:
    """Half-sum of the sixteen Gamma orders at ``x``."""
    x, c1, c2 = _q(x), _q(c1), _q(c2)
    t, d, h = (c1 + c2) / 2, (c2 - c1) / 2, x / 2
    total = 0
    for const, s in _SQ_NUM:
        total += _gamma_order(const(t, d) + s * h)
    for const, s in _SQ_DEN:
        total -= _gamma_order(const(t, d) + s * h)
    return Fraction(total, 2)


def _linear_order(value: Fraction) -> int:
    return 1 if value == 0 else 0


def coefficient_order(x, c1, c2, channel: str) -> int:
    x, c1, c2 = _q(x), _q(c1), _q(c2)
    t, h = (c1 + c2) / 2, _q(x) / 2
    if channel == P2:
        return 0
    if channel == P1:
        return (_linear_order(h + t) + _linear_order(h + t + 1)
                - _linear_order(h - t) - _linear_order(h - t - 1))
    return _linear_order(h + t + 1) - _linear_order(h - t - 1)


def candidates(c1, c2) -> set[Fraction]:
    """Strip points congruent mod 2 to ``+-(c2 - c1)`` or ``+-(c1 + c2)``.

    Contains every lattice point of :class:`Lattices` and every root of the
    channel coefficients.
    """
    c1, c2 = _q(c1), _q(c2)
    out = set()
    for base in (c2 - c1, c1 - c2, c1 + c2, -c1 - c2):
        r = base - 2 * math.floor(base / 2)  # in [0, 2)
        if 0 < r < 1:
            out.add(r)
    return out


def total_order(x, c1, c2, channel: str) -> int:
    half = prefactor_order(x, c1, c2)
    total = half + coefficient_order(x, c1, c2, channel)
    if total.denominator != 1:
        raise BranchPointError(f"half-integer order {total} at x = {x} (c1={c1}, c2={c2})")
    return int(total)


def pole_oracle(c1, c2, channel: str) -> PoleReport:
    c1, c2 = _validate(c1, c2, channel)
    entries = []
    for x in sorted(candidates(c1, c2)):
        order = total_order(x, c1, c2, channel)
        if order < 0:
            entries.append(PoleEntry(x, -order, f"{channel}:oracle:gamma-count"))
    return PoleReport(c1, c2, channel, tuple(entries))


def compare(c1, c2, channels: Iterable[str] = CHANNELS) -> list[tuple[str, PoleReport, PoleReport]]:
    """Channels where classifier and oracle disagree."""
    bad = []
    for ch in channels:
        a, b = classify_poles(c1, c2, ch), pole_oracle(c1, c2, ch)
        if a != b:
            bad.append((ch, a, b))
    return bad
