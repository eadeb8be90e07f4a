"""Scalar crossing factors and the Gamma-function dressing phase.

Gamma ratios are held as :class:`GammaProduct` monomials.  Products whose
arguments pair up modulo integers collapse to exact rationals through
``Gamma(z + 1) = z Gamma(z)``; everything else is evaluated with mpmath at
an explicit working precision.

The unitary factor is the meromorphic square root

    Phi_12 = G_12 / G_21,
    G_12 = Gamma(1 + c2 - du) Gamma(-1 - c1 - du) / (Gamma(-du) Gamma(c2 - c1 - du)),

whose square is ``Phi0_12 / Phi0_21``; it has no branch cuts, so the sign
is fixed once and for all (``Phi -> 1`` at the symmetric point).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .algebra import (
    DEFAULT_ST,
    ONE,
    TENSOR_PARITY,
    ZERO,
    GradedMatrix,
    Scalar,
    as_scalar,
    graded_kron,
    identity,
    partial_supertranspose,
)
from .representations import ANTIPODE, INVERSE_ANTIPODE, RepParams, antiparticle
from .rmatrix import (
    BAR1_DIRECT,
    DIRECT_DIRECT,
    DIRECT_TILDE2,
    SpectralData,
    braiding_contraction,
    closed_form_r,
)

DEFAULT_PRECISION = 50


class GammaPoleError(ZeroDivisionError):
    """A Gamma argument (or a rational factor) sits on a pole."""


class NotRationalError(ValueError):
    """Gamma arguments do not telescope to a rational number."""


def _real(z: Scalar) -> Fraction:
    if z.im:
        raise ValueError("numeric Gamma evaluation is real-argument only")
    return z.re


def to_mpf(z) -> mpmath.mpf:
    q = _real(as_scalar(z))
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class GammaProduct:
    """``prod Gamma(z)^k`` over a finite multiset of exact arguments."""

    exponents: Mapping[Scalar, int] = field(default_factory=dict)

    @classmethod
    def ratio(cls, num: Iterable, den: Iterable) -> "GammaProduct":
        c: Counter = Counter()
        for z in num:
            c[as_scalar(z)] += 1
        for z in den:
            c[as_scalar(z)] -= 1
        return cls({k: v for k, v in c.items() if v})

    def __mul__(self, other: "GammaProduct") -> "GammaProduct":
        c = Counter(self.exponents)
        c.update(other.exponents)
        return GammaProduct({k: v for k, v in c.items() if v})

    def inverse(self) -> "GammaProduct":
        return GammaProduct({k: -v for k, v in self.exponents.items()})

    def __truediv__(self, other: "GammaProduct") -> "GammaProduct":
        return self * other.inverse()

    def num_den(self) -> tuple[list[Scalar], list[Scalar]]:
        num, den = [], []
        for z, k in sorted(self.exponents.items(), key=lambda kv: (kv[0].re, kv[0].im)):
            (num if k > 0 else den).extend([z] * abs(k))
        return num, den

    def rational_value(self) -> Scalar:
        """Exact value by telescoping each integer-shift class.

        Coincident poles are resolved as the limit in which every argument
        is shifted by the same infinitesimal (the convention of
        ``mpmath.gammaprod``).
        """
        factors: Counter = Counter()
        for members in self._classes().values():
            if sum(k for _, k in members):
                raise NotRationalError(
                    f"unbalanced Gamma class {[str(z) for z, _ in members]}")
            base = min((z for z, _ in members), key=lambda z: z.re)
            for z, k in members:
                n = int(z.re - base.re)
                for m in range(n):
                    factors[base + m] += k
        value = ONE
        for f, k in factors.items():
            if not k:
                continue
            if not f:
                if k > 0:
                    return ZERO
                raise GammaPoleError("Gamma product has a pole here")
            value = value * f ** k
        return value

    def _classes(self) -> dict[tuple[Fraction, Fraction], list[tuple[Scalar, int]]]:
        classes: dict[tuple[Fraction, Fraction], list[tuple[Scalar, int]]] = {}
        for z, k in self.exponents.items():
            frac_part = z.re - (z.re.numerator // z.re.denominator)
            classes.setdefault((frac_part, z.im), []).append((z, k))
        return classes

    def meromorphic_sqrt(self) -> tuple["GammaProduct", Scalar]:
        """``(root, rest)`` with ``self = rest * root**2`` and ``rest`` rational.

        Each integer-shift class is rewritten as a power of the Gamma at its
        lowest argument times a rational; classes with an odd total power
        have no meromorphic root and raise :class:`NotRationalError`.
        """
        root: dict[Scalar, int] = {}
        rest = GammaProduct()
        for members in self._classes().values():
            total = sum(k for _, k in members)
            if total % 2:
                raise NotRationalError("odd Gamma power: no meromorphic square root")
            base = min((z for z, _ in members), key=lambda z: z.re)
            if total:
                root[base] = total // 2
            rest = rest * GammaProduct(dict(members)) * GammaProduct({base: -total}) \
                if total else rest * GammaProduct(dict(members))
        return GammaProduct(root), rest.rational_value()

    def numeric(self, precision: int = DEFAULT_PRECISION):
        num, den = self.num_den()
        with mpmath.workdps(precision):
            v = mpmath.gammaprod([to_mpf(z) for z in num], [to_mpf(z) for z in den])
        if mpmath.isinf(v):
            raise GammaPoleError("Gamma product has a pole here")
        return v


# ----------------------------------------------------------------------
# crossing inputs and rational factors
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingInputs:
    c1: Scalar
    c2: Scalar
    u1: Scalar
    u2: Scalar

    def __post_init__(self):
        for name in ("c1", "c2", "u1", "u2"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @property
    def du(self) -> Scalar:
        return self.u1 - self.u2

    @property
    def ctilde(self) -> Scalar:
        return (self.c1 + self.c2) * Fraction(1, 2)

    @property
    def dc(self) -> Scalar:
        return (self.c2 - self.c1) * Fraction(1, 2)

    @property
    def x(self) -> Scalar:
        """Rapidity difference over ``i pi``: ``2 du - 2 dc``."""
        return 2 * self.du - 2 * self.dc

    @classmethod
    def from_x(cls, x, c1, c2, u2=0) -> "CrossingInputs":
        x, c1, c2, u2 = (as_scalar(v) for v in (x, c1, c2, u2))
        du = x * Fraction(1, 2) + (c2 - c1) * Fraction(1, 2)
        return cls(c1, c2, u2 + du, u2)

    def swapped(self) -> "CrossingInputs":
        return CrossingInputs(self.c2, self.c1, self.u2, self.u1)

    def bar1(self) -> "CrossingInputs":
        """Antiparticle in slot 1: ``c1 -> -c1 - 1``, ``u1 -> u1 + c1``."""
        return CrossingInputs(-self.c1 - 1, self.c2, self.u1 + self.c1, self.u2)

    def tilde2(self) -> "CrossingInputs":
        """Inverse-antipode antiparticle in slot 2: ``c2 -> -c2 - 1``, ``u2 -> u2 + c2 + 1``."""
        return CrossingInputs(self.c1, -self.c2 - 1, self.u1, self.u2 + self.c2 + 1)

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("c1", "c2", "u1", "u2")}


def f_cross(ci: CrossingInputs) -> Scalar:
    c1, c2, u1, u2 = ci.c1, ci.c2, ci.u1, ci.u2
    den = (-u2 + u1 + c1) * (1 - u2 + u1 + c1)
    if not den:
        raise GammaPoleError(f"f has a pole at u1 - u2 = {u1 - u2}, c1 = {c1}")
    return (c2 + u2 - u1 - c1) * (1 + c2 + u2 - u1 - c1) / den


def g_cross(ci: CrossingInputs) -> Scalar:
    c1, u1, u2 = ci.c1, ci.u1, ci.u2
    d0, d1 = u2 - u1, u2 - u1 + 1
    if not d0 or not d1:
        raise GammaPoleError(f"g is singular at u2 - u1 = {d0}")
    bracket = 1 + c1 * (1 + c1) / d0 - (2 + c1) * (1 + c1) / d1
    if not bracket:
        raise GammaPoleError("g has a pole (vanishing bracket)")
    return bracket.inverse()


# ----------------------------------------------------------------------
# Gamma factors
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DressingValue:
    value: object
    provenance: str
    precision: int | None = None

    def __float__(self):
        return float(self.value) if not isinstance(self.value, Scalar) else float(self.value.re)


def phi0_gamma(ci: CrossingInputs) -> GammaProduct:
    """Non-unitary crossing solution ``Phi0_12`` as a Gamma monomial."""
    c1, c2, du = ci.c1, ci.c2, ci.du
    return GammaProduct.ratio(
        [1 + c2 - du, 2 + c2 - du, -1 - c1 - du, -c1 - du],
        [-du, 1 - du, c2 - c1 - du, 1 + c2 - c1 - du])


def phi0(ci: CrossingInputs, mode: str = "numeric", precision: int = DEFAULT_PRECISION,
         shifted: CrossingInputs | None = None) -> DressingValue:
    """``Phi0_12`` numerically, or exactly as ``Phi0(shifted) / Phi0(ci)``.

    In ``exact-ratio`` mode the Gamma arguments of the two factors must
    differ by integers; the ratio is then a rational number.
    """
    if mode == "numeric":
        return DressingValue(phi0_gamma(ci).numeric(precision), "phi0:gamma-ratio", precision)
    if mode == "exact-ratio":
        if shifted is None:
            raise ValueError("exact-ratio mode needs the shifted inputs")
        value = (phi0_gamma(shifted) / phi0_gamma(ci)).rational_value()
        return DressingValue(value, "phi0:telescoped")
    raise ValueError(f"unknown mode {mode!r}")


def phi_unitary_gamma(ci: CrossingInputs) -> GammaProduct:
    """``G_12 / G_21``: the meromorphic root of ``Phi0_12 / Phi0_21``."""
    c1, c2, du = ci.c1, ci.c2, ci.du
    return GammaProduct.ratio(
        [1 + c2 - du, -1 - c1 - du, du, c1 - c2 + du],
        [-du, c2 - c1 - du, 1 + c1 + du, -1 - c2 + du])


def phi_unitary(ci: CrossingInputs, precision: int = DEFAULT_PRECISION) -> DressingValue:
    """Unitary and crossing-symmetric dressing factor ``Phi_12``."""
    return DressingValue(phi_unitary_gamma(ci).numeric(precision), "phi:meromorphic-root",
                         precision)


def phi_ratio_sqrt(ci: CrossingInputs, precision: int = DEFAULT_PRECISION):
    """Principal ``sqrt(Phi0_12 / Phi0_21)``; equals ``|Phi_12|`` for real inputs."""
    r = (phi0_gamma(ci) / phi0_gamma(ci.swapped())).numeric(precision)
    with mpmath.workdps(precision):
        return mpmath.sqrt(r)


def rh_cartan_gamma(ci: CrossingInputs) -> GammaProduct:
    """Cartan factor of the universal R-matrix on ``|11>``."""
    c1, c2, du = ci.c1, ci.c2, ci.du
    return GammaProduct.ratio(
        [du, 1 + du, c1 - c2 + du, 1 + c1 - c2 + du],
        [1 + c1 + du, 2 + c1 + du, -1 - c2 + du, -c2 + du])


def rh_cartan_11(ci: CrossingInputs, precision: int = DEFAULT_PRECISION) -> DressingValue:
    return DressingValue(rh_cartan_gamma(ci).numeric(precision), "rh:cartan-11", precision)


MEROMORPHIC, PRINCIPAL = "meromorphic", "principal"


def _rational_sqrt(q: Scalar) -> Scalar:
    from math import isqrt
    r = q.real_fraction() if q.is_real else None
    if r is None or r < 0 or isqrt(r.numerator) ** 2 != r.numerator \
            or isqrt(r.denominator) ** 2 != r.denominator:
        raise NotRationalError(f"rational remainder {q} is not a square")
    return as_scalar(Fraction(isqrt(r.numerator), isqrt(r.denominator)))


def rh_unitarized(ci: CrossingInputs, precision: int = DEFAULT_PRECISION,
                  branch: str = MEROMORPHIC):
    """Unitarized Cartan factor ``sqrt(A_12 / A_21)``.

    ``meromorphic`` takes the Gamma-class square root of the ratio (no
    branch cuts, sign fixed structurally); ``principal`` takes the principal
    root of the numeric ratio, which is non-negative on the real line.
    """
    if branch == PRINCIPAL:
        a12 = rh_cartan_11(ci, precision + 10).value
        a21 = rh_cartan_11(ci.swapped(), precision + 10).value
        with mpmath.workdps(precision):
            return mpmath.sqrt(a12 / a21)
    if branch != MEROMORPHIC:
        raise ValueError(f"unknown branch {branch!r}")
    root, rest = (rh_cartan_gamma(ci) / rh_cartan_gamma(ci.swapped())).meromorphic_sqrt()
    scale = _rational_sqrt(rest)
    with mpmath.workdps(precision):
        return root.numeric(precision) * to_mpf(scale)


def consistency_product(ci: CrossingInputs) -> Scalar:
    """``g(c2, -c1 - 1, u2, u1 + c1) * f(c1, c2, u1, u2)``; identically 1."""
    other = CrossingInputs(ci.c2, -ci.c1 - 1, ci.u2, ci.u1 + ci.c1)
    return g_cross(other) * f_cross(ci)


def double_crossing(ci: CrossingInputs) -> tuple[Scalar, Scalar]:
    """Crossing slot 1 twice: ``Phi0_{1bar 2} Phi0_{1barbar 2}`` next to ``f`` at the barred point."""
    once = ci.bar1()
    lhs = (phi0_gamma(once) * phi0_gamma(once.bar1())).rational_value()
    return lhs, f_cross(once)


# ----------------------------------------------------------------------
# dressed R-matrix in the rapidity variable
# ----------------------------------------------------------------------

def x_coefficients(x, ctilde) -> tuple[Scalar, Scalar, Scalar]:
    """Coefficients of P1, P2, P3 written in ``x`` and ``ctilde``."""
    h = as_scalar(x) * Fraction(1, 2)
    ct = as_scalar(ctilde)
    den1 = (h - ct) * (h - ct - 1)
    if not den1:
        raise GammaPoleError(f"channel coefficient has a pole at x = {x}")
    return ((h + ct) * (h + ct + 1) / den1, ONE, (h + ct + 1) / (h - ct - 1))


def prefactor_squared_gamma(x, ctilde, dc) -> GammaProduct:
    """The sixteen-Gamma ratio under the square root, in ``x``, ``ctilde``, ``dc``."""
    h = as_scalar(x) * Fraction(1, 2)
    ct, d = as_scalar(ctilde), as_scalar(dc)
    return GammaProduct.ratio(
        [1 - h + ct, 2 - h + ct, -1 - h - ct, -h - ct,
         h + d, 1 + h + d, h - d, 1 + h - d],
        [-h - d, 1 - h - d, -h + d, 1 - h + d,
         1 + h + ct, 2 + h + ct, -1 + h - ct, h - ct])


def prefactor_gamma(x, ctilde, dc) -> GammaProduct:
    """Meromorphic square root of :func:`prefactor_squared_gamma`."""
    h = as_scalar(x) * Fraction(1, 2)
    ct, d = as_scalar(ctilde), as_scalar(dc)
    return GammaProduct.ratio(
        [1 + ct - h, -1 - ct - h, h + d, h - d],
        [-h - d, d - h, 1 + ct + h, -1 - ct + h])


@dataclass(frozen=True)
class DressedR:
    ci: CrossingInputs
    prefactor: DressingValue
    coefficients: tuple[Scalar, Scalar, Scalar]
    rational_part: GradedMatrix = field(repr=False)

    def numeric(self) -> dict[tuple[int, int], object]:
        pre = self.prefactor.value
        with mpmath.workdps(self.prefactor.precision or DEFAULT_PRECISION):
            return {k: pre * to_mpf(v) if v.is_real else pre * mpmath.mpc(
                        to_mpf(v.re), to_mpf(v.im))
                    for k, v in self.rational_part.entries.items()}


def dressed_r(ci: CrossingInputs, spectral_data: SpectralData,
              precision: int = DEFAULT_PRECISION) -> DressedR:
    """Crossing-unitary R-matrix ``Phi(x) (P2 + k1 P1 + k3 P3)``."""
    k = x_coefficients(ci.x, ci.ctilde)
    P1, P2, P3 = spectral_data.projectors
    rational = P2 + P1 * k[0] + P3 * k[2]
    pre = prefactor_gamma(ci.x, ci.ctilde, ci.dc).numeric(precision)
    return DressedR(ci, DressingValue(pre, "prefactor:x-form", precision), k, rational)


def dressed_unitarity_defect(forward: DressedR, backward: DressedR) -> float:
    """Largest deviation of the braided product of two dressed matrices from 1."""
    prec = forward.prefactor.precision or DEFAULT_PRECISION
    with mpmath.workdps(prec):
        acc = braiding_contraction(forward.numeric(), backward.numeric(), mpmath.mpf(0))
        worst = mpmath.mpf(0)
        for a in range(4):
            for b in range(4):
                for p in range(4):
                    for q in range(4):
                        want = 1 if (a == p and b == q) else 0
                        worst = max(worst, abs(acc.get((a, b, p, q), 0) - want))
    return worst


# ----------------------------------------------------------------------
# matrix crossing
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingReport:
    passed: bool
    factor: Scalar
    residual: GradedMatrix = field(repr=False)
    variant: str = ANTIPODE


def crossing_inputs(p1: RepParams, p2: RepParams) -> CrossingInputs:
    return CrossingInputs(p1.c, p2.c, p1.u, p2.u)


def check_crossing(p1: RepParams, p2: RepParams, convention: str = DEFAULT_ST,
                   gauge=(1, 1)) -> CrossingReport:
    """``(C^-1 (x) 1) R_{1bar 2}^{st1} (C (x) 1) R_12 f = 1``."""
    conj = antiparticle(p1, ANTIPODE, gauge, convention)
    C, Cinv = conj.cmatrix, conj.cmatrix.inverse()
    one = identity()
    f = f_cross(crossing_inputs(p1, p2))
    Rb = closed_form_r(conj.barred, p2, BAR1_DIRECT).matrix
    R12 = closed_form_r(p1, p2, DIRECT_DIRECT).matrix
    lhs = (graded_kron(Cinv, one) @ partial_supertranspose(Rb, 1, convention)
           @ graded_kron(C, one) @ R12) * f
    res = lhs - identity(TENSOR_PARITY)
    return CrossingReport(res.is_zero(), f, res, ANTIPODE)


def check_crossing2(p1: RepParams, p2: RepParams, convention: str = DEFAULT_ST,
                    gauge=(1, 1)) -> CrossingReport:
    """``(1 (x) C~^-1) R_{1 2~}^{st2} (1 (x) C~) R_12 g = 1`` with the inverse antipode."""
    conj = antiparticle(p2, INVERSE_ANTIPODE, gauge, convention)
    C, Cinv = conj.cmatrix, conj.cmatrix.inverse()
    one = identity()
    g = g_cross(crossing_inputs(p1, p2))
    Rt = closed_form_r(p1, conj.barred, DIRECT_TILDE2).matrix
    R12 = closed_form_r(p1, p2, DIRECT_DIRECT).matrix
    lhs = (graded_kron(one, Cinv) @ partial_supertranspose(Rt, 2, convention)
           @ graded_kron(one, C) @ R12) * g
    res = lhs - identity(TENSOR_PARITY)
    return CrossingReport(res.is_zero(), g, res, INVERSE_ANTIPODE)
