"""Four-dimensional evaluation representations of the sl(2|1) Yangian.

Two families are built here, both in Drinfeld's second realization with
generators ``xi^+_{i,n}``, ``xi^-_{i,n}``, ``kappa_{i,n}`` for the
distinguished Dynkin diagram (node 1 even, node 2 odd):

* ``direct``: E1 = E43, F1 = E34, E2 = -a E14 + b E32, F2 = -d E23 + e E41;
* ``conjugate``: E1 = E34, F1 = E43, E2 = -b E23 - a E41, F2 = -e E14 - d E32.

The module also builds antiparticle data (charge conjugation matrix and the
barred parameters) and checks the conjugation identity
``S(J) = C^{-1} Jbar^st C`` at levels 0 and 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Mapping

from .algebra import (
    DEFAULT_ST,
    ONE,
    ZERO,
    E,
    GradedMatrix,
    I,
    Scalar,
    anticommutator,
    as_scalar,
    bracket,
    identity,
    nullspace,
    supertranspose,
)

DIRECT = "direct"
CONJUGATE = "conjugate"

ANTIPODE = "antipode"
INVERSE_ANTIPODE = "inverse-antipode"

#: Cartan matrix of sl(2|1) in the distinguished basis.
CARTAN = ((2, -1), (-1, 0))
HALF = Fraction(1, 2)

# generator "sign" slots
PLUS, MINUS, CARTAN_SLOT = "+", "-", "k"


class ConstraintError(ValueError):
    """Representation parameters violate ``a e = c + 1`` or ``b d = c``."""


class DegenerateRepresentationWarning(UserWarning):
    """Parameters sit on the reducible-but-indecomposable locus (e = 0 or b = 0)."""


@dataclass(frozen=True)
class RepParams:
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar
    e: Scalar
    u: Scalar = ZERO
    kind: str = DIRECT

    def __post_init__(self):
        for name in "abcdeu":
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.kind not in (DIRECT, CONJUGATE):
            raise ValueError(f"unknown representation kind {self.kind!r}")

    def check(self) -> None:
        if self.a * self.e != self.c + 1:
            raise ConstraintError(f"a*e = {self.a * self.e} != c + 1 = {self.c + 1}")
        if self.b * self.d != self.c:
            raise ConstraintError(f"b*d = {self.b * self.d} != c = {self.c}")

    @property
    def degenerate(self) -> bool:
        return not self.e or not self.b

    @classmethod
    def solve(cls, a, b, c, u=0, kind: str = DIRECT) -> "RepParams":
        """Fill in ``d = c/b`` and ``e = (c+1)/a``."""
        a, b, c = as_scalar(a), as_scalar(b), as_scalar(c)
        return cls(a, b, c, c / b, (c + 1) / a, u, kind)

    def with_u(self, u) -> "RepParams":
        return replace(self, u=as_scalar(u))

    def as_tuple(self) -> tuple[Scalar, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.u)

    def to_json(self) -> dict:
        d = {k: getattr(self, k).to_json() for k in "abcdeu"}
        d["kind"] = self.kind
        return d


GenKey = tuple[int, str, int]  # (root index, slot, level)


@dataclass(frozen=True)
class YangianRep:
    params: RepParams
    level_cap: int
    generators: Mapping[GenKey, GradedMatrix] = field(repr=False)

    def xi_plus(self, i: int, n: int = 0) -> GradedMatrix:
        return self.generators[(i, PLUS, n)]

    def xi_minus(self, i: int, n: int = 0) -> GradedMatrix:
        return self.generators[(i, MINUS, n)]

    def kappa(self, i: int, n: int = 0) -> GradedMatrix:
        return self.generators[(i, CARTAN_SLOT, n)]

    def gen(self, key: GenKey) -> GradedMatrix:
        return self.generators[key]

    # level-zero names used in the coproduct and Casimir formulas
    def E(self, i: int) -> GradedMatrix:
        if i == 3:
            return bracket(self.xi_plus(1), self.xi_plus(2))
        return self.xi_plus(i)

    def F(self, i: int) -> GradedMatrix:
        if i == 3:
            return bracket(self.xi_minus(1), self.xi_minus(2))
        return self.xi_minus(i)

    def H(self, i: int) -> GradedMatrix:
        return self.kappa(i)

    def perturbed(self, key: GenKey, delta: GradedMatrix) -> "YangianRep":
        """Copy with one generator shifted by ``delta`` (fault injection)."""
        gens = dict(self.generators)
        gens[key] = gens[key] + delta
        return replace(self, generators=gens)


def _level0(p: RepParams) -> dict[str, GradedMatrix]:
    a, b, c, d, e = p.a, p.b, p.c, p.d, p.e
    if p.kind == DIRECT:
        E1, F1 = E(4, 3), E(3, 4)
        E2 = -a * E(1, 4) + b * E(3, 2)
        F2 = -d * E(2, 3) + e * E(4, 1)
        H1 = -E(3, 3) + E(4, 4)
        H2 = -c * identity() - E(1, 1) - E(4, 4)
    else:
        E1, F1 = E(3, 4), E(4, 3)
        E2 = -b * E(2, 3) - a * E(4, 1)
        F2 = -e * E(1, 4) - d * E(3, 2)
        H1 = bracket(E1, F1)
        H2 = bracket(E2, F2)
    return {"E1": E1, "F1": F1, "H1": H1, "E2": E2, "F2": F2, "H2": H2}


def build_rep(params: RepParams, level_cap: int = 4, *, check: bool = True) -> YangianRep:
    """All generators up to ``level_cap`` from the closed all-level formulas."""
    if level_cap < 0:
        raise ValueError("level_cap must be non-negative")
    if check:
        params.check()
    if params.degenerate:
        warnings.warn(
            f"parameters {params.to_json()} give a reducible but indecomposable representation",
            DegenerateRepresentationWarning, stacklevel=2)
    a, b, d, e, u = params.a, params.b, params.d, params.e, params.u
    lv0 = _level0(params)
    gens: dict[GenKey, GradedMatrix] = {}
    up, um = u + HALF, u - HALF
    for n in range(level_cap + 1):
        un = u ** n
        gens[(1, PLUS, n)] = lv0["E1"] * un
        gens[(1, MINUS, n)] = lv0["F1"] * un
        gens[(1, CARTAN_SLOT, n)] = lv0["H1"] * un
        if params.kind == DIRECT:
            xp = b * up ** n * E(3, 2) - a * um ** n * E(1, 4)
            xm = e * um ** n * E(4, 1) - d * up ** n * E(2, 3)
            k = (-(a * e) * um ** n * (E(1, 1) + E(4, 4))
                 - (b * d) * up ** n * (E(2, 2) + E(3, 3)))
        else:
            xp = -b * um ** n * E(2, 3) - a * up ** n * E(4, 1)
            xm = -e * up ** n * E(1, 4) - d * um ** n * E(3, 2)
            k = None
        gens[(2, PLUS, n)] = xp
        gens[(2, MINUS, n)] = xm
        gens[(2, CARTAN_SLOT, n)] = k if k is not None else bracket(xp, gens[(2, MINUS, 0)])
    return YangianRep(params, level_cap, gens)


# ----------------------------------------------------------------------
# Drinfeld relations
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    relation: str
    indices: tuple
    residual_entries: int

    def to_json(self) -> dict:
        return {"relation": self.relation, "indices": list(self.indices),
                "nonzero_entries": self.residual_entries}


def drinfeld_relations(gen, level_cap: int) -> Iterator[tuple[str, tuple, GradedMatrix]]:
    """Yield ``(name, indices, residual)`` for every relation instance.

    ``gen(i, slot, n)`` returns the image of a generator; every residual must
    vanish.  Relations are emitted for all levels that stay within
    ``level_cap``, including the symmetrised Serre relations with
    ``n_ij = 2``.
    """
    roots = (1, 2)
    levels = range(level_cap + 1)
    for i in roots:
        for j in roots:
            for m in levels:
                for n in levels:
                    yield ("[k,k]=0", (i, m, j, n),
                           bracket(gen(i, CARTAN_SLOT, m), gen(j, CARTAN_SLOT, n)))
                    if m + n <= level_cap:
                        lhs = bracket(gen(i, PLUS, m), gen(j, MINUS, n))
                        if i == j:
                            lhs = lhs - gen(j, CARTAN_SLOT, m + n)
                        yield ("[x+,x-]=d k", (i, m, j, n), lhs)
            for sgn, slot in ((1, PLUS), (-1, MINUS)):
                aij = CARTAN[i - 1][j - 1]
                for m in levels:
                    yield (f"[k0,x{slot}]=a x", (i, j, m),
                           bracket(gen(i, CARTAN_SLOT, 0), gen(j, slot, m))
                           - gen(j, slot, m) * (sgn * aij))
                for m in levels:
                    for n in levels:
                        if m + n + 1 > level_cap:
                            continue
                        k_m, k_m1 = gen(i, CARTAN_SLOT, m), gen(i, CARTAN_SLOT, m + 1)
                        x_n, x_n1 = gen(j, slot, n), gen(j, slot, n + 1)
                        res = (bracket(k_m1, x_n) - bracket(k_m, x_n1)
                               - anticommutator(k_m, x_n) * (Fraction(sgn * aij, 2)))
                        yield (f"k-shift{slot}", (i, m, j, n), res)
                        y_m, y_m1 = gen(i, slot, m), gen(i, slot, m + 1)
                        res = (bracket(y_m1, x_n) - bracket(y_m, x_n1)
                               - anticommutator(y_m, x_n) * (Fraction(sgn * aij, 2)))
                        yield (f"x-shift{slot}", (i, m, j, n), res)
                if i != j:
                    for k1 in levels:
                        for k2 in levels:
                            if k2 < k1:
                                continue
                            for l in levels:
                                if k1 + k2 + l > level_cap:
                                    continue
                                xi1, xi2 = gen(i, slot, k1), gen(i, slot, k2)
                                xj = gen(j, slot, l)
                                res = bracket(xi1, bracket(xi2, xj))
                                if k1 != k2:
                                    res = res + bracket(xi2, bracket(xi1, xj))
                                yield (f"serre{slot}", (i, j, k1, k2, l), res)


def verify_drinfeld(rep: YangianRep, level_cap: int | None = None) -> list[Violation]:
    """All violated relation instances (empty list means the rep is valid)."""
    cap = rep.level_cap if level_cap is None else level_cap
    if cap > rep.level_cap:
        raise ValueError(f"rep only built to level {rep.level_cap}")

    def gen(i, slot, n):
        return rep.generators[(i, slot, n)]

    return [Violation(name, idx, len(res.entries))
            for name, idx, res in drinfeld_relations(gen, cap) if not res.is_zero()]


# ----------------------------------------------------------------------
# antiparticles
# ----------------------------------------------------------------------

def rapidity_over_2pi_i(u, c) -> Scalar:
    """``theta / (2 pi i)`` for ``theta = -2 pi i (u + c/2)``; exact."""
    return -(as_scalar(u) + as_scalar(c) * HALF)


@dataclass(frozen=True)
class ConjugationData:
    cmatrix: GradedMatrix
    barred: RepParams
    variant: str
    solution_dim: int = 1


def charge_conjugation(p: RepParams, abar, bbar) -> GradedMatrix:
    """``C = (b/abar) E12 + (bbar/a) E21 - E34 + E43``."""
    abar, bbar = as_scalar(abar), as_scalar(bbar)
    return (p.b / abar) * E(1, 2) + (bbar / p.a) * E(2, 1) - E(3, 4) + E(4, 3)


class ConjugationError(ValueError):
    """No barred parameters satisfy the level-zero conjugation equations."""


def antiparticle(params: RepParams, variant: str = ANTIPODE, gauge=(1, 1),
                 convention: str = DEFAULT_ST) -> ConjugationData:
    """Antiparticle representation data for a direct-kind representation.

    ``cbar = -c - 1``; ``ubar = u + c`` (antipode) or ``u + c + 1`` (inverse
    antipode).  ``dbar`` and ``ebar`` are solved from ``-F2 = C^{-1} Fbar2^st C``
    and then checked against ``abar ebar = cbar + 1`` and ``bbar dbar = cbar``.
    """
    if params.kind != DIRECT:
        raise ValueError("antiparticle data is defined for the direct representation")
    if params.degenerate:
        raise ConstraintError("antiparticle needs a non-degenerate representation")
    abar, bbar = (as_scalar(g) for g in gauge)
    if not abar or not bbar:
        raise ValueError("gauge values must be nonzero")
    if variant not in (ANTIPODE, INVERSE_ANTIPODE):
        raise ValueError(f"unknown variant {variant!r}")
    cbar = -params.c - 1
    ubar = params.u + params.c + (1 if variant == INVERSE_ANTIPODE else 0)
    C = charge_conjugation(params, abar, bbar)
    Cinv = C.inverse()
    # -F2 = C^{-1} (-dbar E23 + ebar E41)^st C is linear in (dbar, ebar)
    F2 = -params.d * E(2, 3) + params.e * E(4, 1)
    col_d = Cinv @ supertranspose(-E(2, 3), convention) @ C
    col_e = Cinv @ supertranspose(E(4, 1), convention) @ C
    target = -F2
    keys = sorted(set(col_d.entries) | set(col_e.entries) | set(target.entries))
    # dbar*col_d + ebar*col_e - target = 0, homogeneous in (dbar, ebar, -1)
    rows = [[col_d[k], col_e[k], -target[k]] for k in keys]
    kernel = [v for v in nullspace(rows, 3) if v[2]]
    full = nullspace(rows, 3)
    if not kernel:
        raise ConjugationError("level-zero conjugation equation has no solution for dbar, ebar")
    v = kernel[0]
    dbar, ebar = v[0] / v[2], v[1] / v[2]
    barred = RepParams(abar, bbar, cbar, dbar, ebar, ubar, DIRECT)
    try:
        barred.check()
    except ConstraintError as exc:
        raise ConstraintError(f"solved barred parameters violate the constraints: {exc}") from exc
    # dimension of the affine solution set for (dbar, ebar)
    return ConjugationData(C, barred, variant, solution_dim=len(full) - 1)


@dataclass(frozen=True)
class ConjugationReport:
    level: int
    variant: str
    failures: tuple[GenKey, ...]
    checked: int

    @property
    def passed(self) -> bool:
        return not self.failures


def check_conjugation(rep: YangianRep, conj: ConjugationData, level: int = 1,
                      convention: str = DEFAULT_ST) -> ConjugationReport:
    """Compare ``S(J)`` (or ``S^{-1}(J)``) with ``C^{-1} Jbar^st C`` for every generator.

    At level zero the antipode is ``-J``.  Level one uses the coproduct
    tails, so this needs ``rep.level_cap >= 1``.
    """
    from .coproducts import GENERATORS, antipode, inverse_antipode

    if level not in (0, 1):
        raise ValueError("conjugation is checked at level 0 or 1")
    barred = build_rep(conj.barred, level_cap=max(level, 1))
    C, Cinv = conj.cmatrix, conj.cmatrix.inverse()
    anti = inverse_antipode if conj.variant == INVERSE_ANTIPODE else antipode
    failures = []
    gens = [g for g in GENERATORS if g[2] <= level]
    for g in gens:
        lhs = anti(g, rep)
        rhs = Cinv @ supertranspose(barred.gen(g), convention) @ C
        if lhs != rhs:
            failures.append(g)
    return ConjugationReport(level, conj.variant, tuple(failures), len(gens))


def rapidity_shift(params: RepParams, conj: ConjugationData) -> Scalar:
    """``(theta_bar - theta) / (i pi)`` (equals 1 for the antipode variant)."""
    t = rapidity_over_2pi_i(params.u, params.c)
    tb = rapidity_over_2pi_i(conj.barred.u, conj.barred.c)
    # theta = 2 pi i * t  => (theta_bar - theta)/(i pi) = 2 (tb - t)
    return 2 * (tb - t)


# ----------------------------------------------------------------------
# x^\pm parametrization
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class XpmParams:
    xplus: Scalar
    xminus: Scalar
    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        for name in ("xplus", "xminus", "alpha", "beta"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    def shortening_residual(self) -> Scalar:
        xp, xm, ab = self.xplus, self.xminus, self.alpha * self.beta
        return xp + ab / xp - xm - ab / xm - I

    def crossed(self) -> "XpmParams":
        ab = self.alpha * self.beta
        return XpmParams(ab / self.xplus, ab / self.xminus, self.alpha, self.beta)

    @classmethod
    def from_xplus(cls, xplus, alpha, beta) -> "XpmParams":
        """Solve the shortening condition for ``x^-`` given ``x^+``.

        ``x^- + ab/x^- = k`` with ``k = x^+ + ab/x^+ - i``; only returns when
        the root is a Gaussian rational, otherwise raises ``ValueError``.
        """
        xp, alpha, beta = as_scalar(xplus), as_scalar(alpha), as_scalar(beta)
        ab = alpha * beta
        k = xp + ab / xp - I
        root = _gaussian_sqrt(k * k - 4 * ab)
        if root is None:
            raise ValueError("x^- is not a Gaussian rational for these inputs")
        return cls(xp, (k + root) * Fraction(1, 2), alpha, beta)


    @classmethod
    def from_x_pair(cls, xplus, xminus, alpha) -> "XpmParams":
        """Fix ``beta`` from the shortening condition for given ``x^+ != x^-``."""
        xp, xm, alpha = as_scalar(xplus), as_scalar(xminus), as_scalar(alpha)
        if xp == xm or not alpha:
            raise ValueError("need x^+ != x^- and alpha != 0")
        ab = (I - xp + xm) / (1 / xp - 1 / xm)
        return cls(xp, xm, alpha, ab / alpha)


def _isqrt_fraction(q: Fraction) -> Fraction | None:
    from math import isqrt
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _gaussian_sqrt(z: Scalar) -> Scalar | None:
    """Exact square root in Q(i) when it exists."""
    a, b = z.re, z.im
    mod = _isqrt_fraction(a * a + b * b)
    if mod is None:
        return None
    x = _isqrt_fraction((mod + a) / 2)
    y = _isqrt_fraction((mod - a) / 2)
    if x is None or y is None:
        return None
    if b < 0:
        y = -y
    r = Scalar(x, y)
    return r if r * r == z else None


def from_xpm(xp: XpmParams, u=0) -> RepParams:
    """Representation parameters in the x^\\pm parametrization."""
    if not xp.xplus or not xp.xminus:
        raise ValueError("x^+ and x^- must be nonzero")
    if xp.shortening_residual():
        raise ConstraintError("x^\\pm violate x+ + ab/x+ - x- - ab/x- = i")
    a = -ONE
    b = -xp.alpha * (1 - xp.xminus / xp.xplus)
    d = I * xp.beta / xp.xminus
    e = I * (xp.xplus - xp.xminus)
    c = -1 - I * (xp.xplus - xp.xminus)
    p = RepParams(a, b, c, d, e, u, DIRECT)
    p.check()
    return p


def barred_from_xpm(xp: XpmParams) -> dict[str, Scalar]:
    """Barred parameters in the x^\\pm parametrization."""
    return {
        "a": -ONE,
        "b": -xp.alpha * (1 - xp.xplus / xp.xminus),
        "d": I * xp.xminus / xp.alpha,
        "e": -1 - I * (xp.xplus - xp.xminus),
    }
