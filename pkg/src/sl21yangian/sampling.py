"""Seeded sampling of generic rational parameters.

Numerators and denominators are bounded by ``bound``.  Degenerate loci are
rejected: ``c`` in {0, -1}, vanishing ``a``/``b``, spectral differences on
R-matrix entry poles, crossing-factor poles and Casimir collisions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import Scalar, as_scalar
from .representations import CONJUGATE, DIRECT, RepParams

DEFAULT_BOUND = 1000


@dataclass(frozen=True)
class SamplingSpec:
    seed: int = 0
    count: int = 5
    bound: int = DEFAULT_BOUND
    # degenerate loci excluded by default; kept in reports for self-description
    excluded: tuple[str, ...] = (
        "c in {0, -1}",
        "a = 0 or b = 0",
        "u1 - u2 in {c2, c2 + 1, -c1, -c1 - 1, c2 - c1, c2 - c1 + 1} (entry poles)",
        "u1 - u2 in {0, 1} or a vanishing g bracket (crossing-factor poles)",
        "c1 + c2 in {0, -1, -2} (projector collisions)",
    )

    def to_json(self) -> dict:
        return {"seed": self.seed, "count": self.count, "bound": self.bound,
                "excluded": list(self.excluded)}


def rational(rng: random.Random, bound: int = DEFAULT_BOUND, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if q or not nonzero:
            return q


def rep_params(rng: random.Random, bound: int = DEFAULT_BOUND, kind: str = DIRECT,
               c=None, u=None) -> RepParams:
    while True:
        cc = as_scalar(c) if c is not None else as_scalar(rational(rng, bound))
        if c is None and cc in (0, -1):
            continue
        a, b = rational(rng, bound), rational(rng, bound)
        uu = as_scalar(u) if u is not None else as_scalar(rational(rng, bound, nonzero=False))
        return RepParams.solve(a, b, cc, uu, kind)


def _pair_ok(p1: RepParams, p2: RepParams) -> bool:
    du, c1, c2 = p1.u - p2.u, p1.c, p2.c
    # direct/conjugate entries, the swapped pair, the barred pair, and f, g poles
    bad_du = {c2, c2 + 1, -c1, -c1 - 1, c2 - c1, c2 - c1 + 1, 0, 1}
    if du in bad_du or c1 + c2 in (0, -1, -2):
        return False
    bracket = 1 + c1 * (1 + c1) / -du - (2 + c1) * (1 + c1) / (1 - du)
    return bool(bracket)


def pairs(spec: SamplingSpec, kind: str = DIRECT, c1=None, c2=None) -> Iterator[tuple[RepParams, RepParams]]:
    """``spec.count`` parameter pairs; fixed ``c1``/``c2`` skip the generic filter."""
    rng = random.Random(spec.seed)
    forced = c1 is not None or c2 is not None
    made = 0
    while made < spec.count:
        p1 = rep_params(rng, spec.bound, kind, c1)
        p2 = rep_params(rng, spec.bound, kind, c2)
        if forced or _pair_ok(p1, p2):
            made += 1
            yield p1, p2


def triples(spec: SamplingSpec, kind: str = DIRECT) -> Iterator[tuple[RepParams, RepParams, RepParams]]:
    rng = random.Random(spec.seed)
    made = 0
    while made < spec.count:
        ps = [rep_params(rng, spec.bound, kind) for _ in range(3)]
        if all(_pair_ok(ps[i], ps[j]) for i in range(3) for j in range(3) if i != j):
            made += 1
            yield tuple(ps)


def real_crossing_point(rng: random.Random, bound: int = 60) -> tuple[Fraction, ...]:
    """``(c1, c2, u1, u2)`` for the numeric dressing checks, off Gamma lattices."""
    while True:
        c1, c2 = rational(rng, bound), rational(rng, bound)
        u1, u2 = rational(rng, bound, False), rational(rng, bound, False)
        vals = (c1, c2, u1 - u2, c1 - c2, c1 + c2)
        if all(v.denominator > 1 for v in vals) and (u1 - u2 + c1).denominator > 1 \
                and (u1 - u2 - c2).denominator > 1:
            return c1, c2, u1, u2


__all__ = ["SamplingSpec", "rational", "rep_params", "pairs", "triples",
           "real_crossing_point", "DEFAULT_BOUND", "CONJUGATE", "DIRECT", "Scalar"]
