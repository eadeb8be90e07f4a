"""R-matrices intertwining two four-dimensional representations.

``R`` acts on states as ``R |ij> = sum_mn R_{ijmn} |mn>``; as a matrix on the
row-major tensor basis this is ``M[(m,n), (i,j)] = R_{ijmn}``.  Two routes
are provided:

* :func:`solve_r` derives R from ``Delta^op(J) R = R Delta(J)`` by exact
  linear algebra;
* :func:`closed_form_r` substitutes into the closed-form entries (direct,
  conjugate, crossed-direct pairs).

Each route checks the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .algebra import (
    ONE,
    ZERO,
    GradedMatrix,
    Scalar,
    STD_PARITY,
    TENSOR_PARITY,
    graded_kron,
    identity,
    nullspace,
)
from .coproducts import coproduct, graded_permutation, opposite_coproduct
from .representations import (
    CARTAN_SLOT,
    CONJUGATE,
    DIRECT,
    MINUS,
    PLUS,
    RepParams,
    YangianRep,
    build_rep,
)

DIRECT_DIRECT = "direct-direct"
CONJ_CONJ = "conjugate-conjugate"
BAR1_DIRECT = "bar1-direct"
DIRECT_TILDE2 = "direct-tilde2"
PAIR_KINDS = (DIRECT_DIRECT, CONJ_CONJ, BAR1_DIRECT, DIRECT_TILDE2)


def _st(label: str) -> int:
    """Tensor basis index of a two-digit state label such as ``"34"``."""
    return 4 * (int(label[0]) - 1) + int(label[1]) - 1


# input state -> [(entry name, output state)]
LAYOUT: dict[str, tuple[tuple[str, str], ...]] = {
    "11": (("one", "11"),),
    "12": (("B", "12"), ("C", "21"), ("D", "34"), ("E", "43")),
    "21": (("F", "12"), ("G", "21"), ("H", "34"), ("I", "43")),
    "22": (("L", "22"),),
    "33": (("Gamma", "33"),),
    "34": (("P", "12"), ("Q", "21"), ("N", "34"), ("Theta", "43")),
    "43": (("T", "12"), ("U", "21"), ("Psi", "34"), ("Xi", "43")),
    "44": (("V", "44"),),
    "13": (("alpha1", "13"), ("alpha2", "31")),
    "14": (("alpha3", "14"), ("alpha4", "41")),
    "23": (("alpha5", "23"), ("alpha6", "32")),
    "24": (("alpha7", "24"), ("alpha8", "42")),
    "31": (("beta1", "13"), ("beta2", "31")),
    "41": (("beta3", "14"), ("beta4", "41")),
    "32": (("beta5", "23"), ("beta6", "32")),
    "42": (("beta7", "24"), ("beta8", "42")),
}

#: (entry name) -> matrix position (row, col)
POSITIONS: dict[str, tuple[int, int]] = {
    name: (_st(out), _st(inp)) for inp, items in LAYOUT.items() for name, out in items
}

#: Relations between entries (left = sign * right) stated alongside the closed forms.
ENTRY_SYMMETRIES = (
    ("D", -1, "E"), ("H", -1, "I"), ("Psi", 1, "Theta"), ("Xi", 1, "N"),
    ("V", 1, "Gamma"), ("T", -1, "P"), ("Q", -1, "U"),
    ("alpha1", 1, "alpha3"), ("alpha2", 1, "alpha4"), ("alpha5", 1, "alpha7"),
    ("alpha6", 1, "alpha8"), ("beta1", 1, "beta3"), ("beta2", 1, "beta4"),
    ("beta5", 1, "beta7"), ("beta6", 1, "beta8"),
)


class RMatrixPoleError(ZeroDivisionError):
    """Closed-form entries evaluated on one of their poles."""


class KernelDimensionError(ValueError):
    def __init__(self, dim: int):
        super().__init__(f"intertwiner space has dimension {dim}, expected 1")
        self.dim = dim


@dataclass(frozen=True)
class RMatrix:
    kind: str
    params1: RepParams
    params2: RepParams
    matrix: GradedMatrix = field(repr=False)

    def entry(self, name: str) -> Scalar:
        return self.matrix[POSITIONS[name]]

    def entries(self) -> dict[str, Scalar]:
        return {name: self.matrix[pos] for name, pos in POSITIONS.items()}

    def component(self, i: int, j: int, m: int, n: int) -> Scalar:
        """``R_{ijmn}`` with 0-based single-space indices."""
        return self.matrix[(4 * m + n, 4 * i + j)]

    def symmetry_defects(self) -> list[str]:
        e = self.entries()
        return [f"{a} != {s:+d}*{b}" for a, s, b in ENTRY_SYMMETRIES if e[a] != s * e[b]]

    def off_pattern(self) -> list[tuple[int, int]]:
        allowed = set(POSITIONS.values())
        return sorted(k for k in self.matrix.entries if k not in allowed)

    def s_matrix(self) -> GradedMatrix:
        """Physical S-matrix ``S = P R`` with the graded permutation ``P``."""
        return graded_permutation() @ self.matrix


def assemble(values: Mapping[str, Scalar]) -> GradedMatrix:
    ent = {}
    for name, pos in POSITIONS.items():
        v = ONE if name == "one" else values[name]
        ent[pos] = v
    return GradedMatrix(TENSOR_PARITY, ent)


def _div(num, den) -> Scalar:
    if not den:
        raise RMatrixPoleError("R-matrix entry evaluated at a pole")
    return num / den


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------

def _direct_entries(p1: RepParams, p2: RepParams) -> dict[str, Scalar]:
    a1, b1, c1, d1, e1 = p1.a, p1.b, p1.c, p1.d, p1.e
    a2, b2, c2, d2, e2 = p2.a, p2.b, p2.c, p2.d, p2.e
    du = p1.u - p2.u
    den = (-1 + du - c2) * (du - c2)
    if not den:
        raise RMatrixPoleError(f"delta u = {du} hits a pole (c2 = {c2})")
    v = {}
    v["B"] = (du + c1 - c2) * (1 + du + c1 - c2) / den
    v["C"] = _div(b2 * (1 + c2) * d1 * e1, den * e2)
    v["D"] = -(b2 * (du + c1 - c2) * e1) / den
    v["E"] = -v["D"]
    v["F"] = _div(a1 * b1 * (1 + c2) * d2, a2 * den)
    v["G"] = du * (1 + du) / den
    v["H"] = _div(-(du * b1 * (1 + c2)), a2 * den)
    v["I"] = -v["H"]
    v["L"] = (du + c1) * (1 + du + c1) / den
    v["Gamma"] = (1 + du + c1) / (-1 + du - c2)
    v["N"] = du * (du + c1 - c2) / den
    v["Theta"] = (du - c2 * (1 + c1)) / den
    v["Psi"] = v["Theta"]
    v["Xi"] = v["N"]
    v["P"] = -(a1 * d2 * (du + c1 - c2)) / den
    v["Q"] = _div(-(d1 * du * (1 + c2)), den * e2)
    v["U"] = -v["Q"]
    v["V"] = v["Gamma"]
    v["T"] = -v["P"]
    v["alpha1"] = v["alpha3"] = (du + c1 - c2) / (-1 + du - c2)
    v["alpha2"] = v["alpha4"] = _div(a2 * (1 + c1), a1 * (1 - du + c2))
    v["alpha5"] = v["alpha7"] = du * (1 + du + c1) / den
    v["alpha6"] = v["alpha8"] = b1 * (1 + du + c1) * d2 / den
    v["beta1"] = v["beta3"] = _div((1 + c1) * e2, (1 - du + c2) * e1)
    v["beta2"] = v["beta4"] = du / (-1 + du - c2)
    v["beta5"] = v["beta7"] = b2 * (1 + du + c1) * d1 / den
    v["beta6"] = v["beta8"] = (1 + du + c1) * (du + c1 - c2) / den
    return v


def _bar1_entries(pb1: RepParams, p2: RepParams) -> dict[str, Scalar]:
    """Primed entries; ``pb1`` carries the barred parameters of particle 1."""
    ab, bb, db, eb = pb1.a, pb1.b, pb1.d, pb1.e
    c1 = -pb1.c - 1
    u1 = pb1.u - c1
    a2, b2, c2, d2, e2 = p2.a, p2.b, p2.c, p2.d, p2.e
    du = u1 - p2.u
    den = (-1 + du + c1 - c2) * (du + c1 - c2)
    if not den:
        raise RMatrixPoleError(f"delta u = {du} hits a pole of the crossed R-matrix")
    v = {}
    v["B"] = (du - 1 - c2) * (du - c2) / den
    v["C"] = _div(b2 * (1 + c2) * db * eb, den * e2)
    v["D"] = -(b2 * (du - 1 - c2) * eb) / den
    v["E"] = -v["D"]
    v["F"] = _div(ab * bb * (1 + c2) * d2, a2 * den)
    v["G"] = (du + c1) * (1 + du + c1) / den
    v["V"] = v["Gamma"] = du / (-1 + du + c1 - c2)
    v["H"] = _div(-((du + c1) * bb * (1 + c2)), a2 * den)
    v["I"] = -v["H"]
    v["L"] = (du - 1) * du / den
    v["N"] = (du + c1) * (du - 1 - c2) / den
    v["Xi"] = v["N"]
    v["Theta"] = (du + c1 * (1 + c2)) / den
    v["Psi"] = v["Theta"]
    v["P"] = -(ab * d2 * (du - 1 - c2)) / den
    v["T"] = -v["P"]
    v["Q"] = _div(-(db * (du + c1) * (1 + c2)), den * e2)
    v["U"] = -v["Q"]
    v["alpha1"] = v["alpha3"] = (du - 1 - c2) / (-1 + du + c1 - c2)
    v["alpha2"] = v["alpha4"] = _div(-(a2 * c1), ab * (1 - du - c1 + c2))
    v["alpha5"] = v["alpha7"] = du * (du + c1) / den
    v["alpha6"] = v["alpha8"] = bb * du * d2 / den
    v["beta1"] = v["beta3"] = _div(-(c1 * e2), (1 - du - c1 + c2) * eb)
    v["beta2"] = v["beta4"] = (du + c1) / (-1 + du + c1 - c2)
    v["beta5"] = v["beta7"] = b2 * du * db / den
    v["beta6"] = v["beta8"] = du * (du - 1 - c2) / den
    return v


def _conjugate_entries(p1: RepParams, p2: RepParams) -> dict[str, Scalar]:
    a1, b1, c1, d1, e1 = p1.a, p1.b, p1.c, p1.d, p1.e
    a2, b2, c2, d2, e2 = p2.a, p2.b, p2.c, p2.d, p2.e
    du = p1.u - p2.u
    den = (-1 + du - c1) * (du - c1)
    if not den:
        raise RMatrixPoleError(f"delta u = {du} hits a pole (c1 = {c1})")
    v = {}
    v["B"] = du * (1 + du) / den
    v["C"] = _div(a1 * b1 * c2 * e2, den * b2)
    v["T"] = None  # filled below
    v["D"] = _div(du * a1 * c2, b2 * den)
    v["E"] = -v["D"]
    v["F"] = _div(a2 * b2 * (1 + c1) * c1, a1 * b1 * den)
    v["G"] = (du - c1 + c2) * (1 + du - c1 + c2) / den
    v["H"] = a2 * d1 * (du - c1 + c2) / den
    v["I"] = -v["H"]
    v["L"] = (du + c2) * (1 + du + c2) / den
    v["Gamma"] = (1 + du + c2) / (-1 + du - c1)
    v["N"] = du * (du - c1 + c2) / den
    v["Theta"] = (du - c1 * (1 + c2)) / den
    v["Psi"] = v["Theta"]
    v["Xi"] = v["N"]
    v["V"] = v["Gamma"]
    v["P"] = _div(du * b2 * (1 + c1), a1 * den)
    v["T"] = -v["P"]
    v["Q"] = b1 * e2 * (du - c1 + c2) / den
    v["U"] = -v["Q"]
    v["alpha1"] = v["alpha3"] = du / (-1 + du - c1)
    v["alpha2"] = v["alpha4"] = _div(a1 * e2, 1 - du + c1)
    v["alpha5"] = v["alpha7"] = (1 + du + c2) * (du - c1 + c2) / den
    v["alpha6"] = v["alpha8"] = _div(c1 * b2 * (1 + du + c2), b1 * den)
    v["beta1"] = v["beta3"] = _div((1 + c1) * a2, (1 - du + c1) * a1)
    v["beta2"] = v["beta4"] = (du - c1 + c2) / (-1 + du - c1)
    v["beta5"] = v["beta7"] = b1 * d2 * (1 + du + c2) / den
    v["beta6"] = v["beta8"] = (1 + du + c2) * du / den
    return v


def closed_form_r(params1: RepParams, params2: RepParams, kind: str = DIRECT_DIRECT) -> RMatrix:
    """R-matrix by substitution into the closed-form entries.

    ``params1``/``params2`` are the parameters of the representations actually
    intertwined: for ``bar1-direct`` pass the barred particle-1 parameters
    (``cbar = -c1 - 1``, ``ubar = u1 + c1``); for ``direct-tilde2`` the
    tilded particle-2 parameters (``c~ = -c2 - 1``, ``u~ = u2 + c2 + 1``),
    which are plugged into the direct formulas.
    """
    if kind in (DIRECT_DIRECT, DIRECT_TILDE2):
        vals = _direct_entries(params1, params2)
    elif kind == BAR1_DIRECT:
        vals = _bar1_entries(params1, params2)
    elif kind == CONJ_CONJ:
        vals = _conjugate_entries(params1, params2)
    else:
        raise ValueError(f"unknown pair kind {kind!r}")
    return RMatrix(kind, params1, params2, assemble(vals))


# ----------------------------------------------------------------------
# solver
# ----------------------------------------------------------------------

SOLVER_GENERATORS = tuple(
    [(i, s, 0) for i in (1, 2) for s in (PLUS, MINUS, CARTAN_SLOT)]
    + [(i, s, 1) for i in (1, 2) for s in (PLUS, MINUS, CARTAN_SLOT)])


def allowed_pattern(pair: tuple[YangianRep, YangianRep]) -> list[tuple[int, int]]:
    """Positions compatible with the level-zero Cartan coproducts."""
    diags = []
    for i in (1, 2):
        D = coproduct((i, CARTAN_SLOT, 0), pair)
        if any(r != c for r, c in D.entries):
            raise ValueError("Cartan coproduct is not diagonal")
        diags.append([D[(k, k)] for k in range(16)])
    return [(r, c) for r in range(16) for c in range(16)
            if all(d[r] == d[c] for d in diags)]


def intertwiner_system(pair, generators=SOLVER_GENERATORS):
    """Rows of ``Delta^op(J) R - R Delta(J) = 0`` over the allowed unknowns."""
    unknowns = allowed_pattern(pair)
    col = {pos: k for k, pos in enumerate(unknowns)}
    rows = []
    for g in generators:
        D = coproduct(g, pair)
        Dop = opposite_coproduct(g, pair)
        eqs: dict[tuple[int, int], dict[int, Scalar]] = {}
        # (Dop R)[x, y] = sum_r Dop[x, r] R[r, y]
        for (x, r), v in Dop.entries.items():
            for y in range(16):
                k = col.get((r, y))
                if k is not None:
                    row = eqs.setdefault((x, y), {})
                    row[k] = row.get(k, ZERO) + v
        # (R D)[x, y] = sum_c R[x, c] D[c, y]
        for (c, y), v in D.entries.items():
            for x in range(16):
                k = col.get((x, c))
                if k is not None:
                    row = eqs.setdefault((x, y), {})
                    row[k] = row.get(k, ZERO) - v
        for row in eqs.values():
            if any(row.values()):
                dense = [ZERO] * len(unknowns)
                for k, v in row.items():
                    dense[k] = v
                rows.append(dense)
    return unknowns, rows


def solve_r(pair: tuple[YangianRep, YangianRep], kind: str | None = None) -> RMatrix:
    """Intertwiner of ``rep1 (x) rep2`` normalised by ``R |11> = |11> + ...``."""
    r1, r2 = pair
    for r in pair:
        if r.level_cap < 1:
            raise ValueError("representations must be built to level 1")
    unknowns, rows = intertwiner_system(pair)
    kernel = nullspace(rows, len(unknowns))
    if len(kernel) != 1:
        raise KernelDimensionError(len(kernel))
    vec = kernel[0]
    idx11 = unknowns.index((0, 0))
    if not vec[idx11]:
        raise ValueError("intertwiner has vanishing |11> coefficient")
    scale = vec[idx11].inverse()
    M = GradedMatrix(TENSOR_PARITY, {pos: v * scale for pos, v in zip(unknowns, vec)})
    if kind is None:
        kind = CONJ_CONJ if r1.params.kind == CONJUGATE else DIRECT_DIRECT
    return RMatrix(kind, r1.params, r2.params, M)


def intertwining_residuals(R: GradedMatrix, pair, generators=SOLVER_GENERATORS) -> dict:
    out = {}
    for g in generators:
        res = opposite_coproduct(g, pair) @ R - R @ coproduct(g, pair)
        if not res.is_zero():
            out[g] = res
    return out


# ----------------------------------------------------------------------
# Yang-Baxter and unitarity
# ----------------------------------------------------------------------

def _nonzero_by_input(R):
    """``{(i, j): [(m, n, R_ijmn), ...]}`` with 0-based indices.

    Accepts an :class:`RMatrix` or a plain ``{(row, col): value}`` mapping.
    """
    entries = R.matrix.entries if isinstance(R, RMatrix) else R
    table: dict[tuple[int, int], list] = {}
    for (row, col), v in entries.items():
        i, j = divmod(col, 4)
        m, n = divmod(row, 4)
        table.setdefault((i, j), []).append((m, n, v))
    return table


@dataclass
class CheckReport:
    passed: bool
    checked: int
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def check_ybe(R12: RMatrix, R13: RMatrix, R23: RMatrix) -> CheckReport:
    """All 4096 components of the graded Yang-Baxter equation.

    ``R12 R13 R23`` on the left with sign ``(-1)^{|j2|(|i3|+|n3|)}``, and
    ``R23 R13 R12`` on the right with sign ``(-1)^{|j2|(|j3|+|m3|)}``.
    """
    p = STD_PARITY
    t12, t13, t23 = (_nonzero_by_input(R) for R in (R12, R13, R23))
    lhs: dict[tuple, Scalar] = {}
    for (i1, i2), outs12 in t12.items():
        for j1, j2, r12 in outs12:
            for i3 in range(4):
                for m1, n3, r13 in t13.get((j1, i3), ()):
                    s = -1 if p[j2] * (p[i3] + p[n3]) % 2 else 1
                    for m2, m3, r23 in t23.get((j2, n3), ()):
                        key = (i1, i2, i3, m1, m2, m3)
                        term = r12 * r13 * r23
                        lhs[key] = lhs.get(key, ZERO) + (term if s > 0 else -term)
    rhs: dict[tuple, Scalar] = {}
    for (i2, i3), outs23 in t23.items():
        for j2, j3, r23 in outs23:
            for i1 in range(4):
                for n1, m3, r13 in t13.get((i1, j3), ()):
                    s = -1 if p[j2] * (p[j3] + p[m3]) % 2 else 1
                    for m1, m2, r12 in t12.get((n1, j2), ()):
                        key = (i1, i2, i3, m1, m2, m3)
                        term = r23 * r13 * r12
                        rhs[key] = rhs.get(key, ZERO) + (term if s > 0 else -term)
    bad = []
    for key in set(lhs) | set(rhs):
        if lhs.get(key, ZERO) != rhs.get(key, ZERO):
            bad.append(tuple(k + 1 for k in key))
    return CheckReport(not bad, 4096, sorted(bad))


def braiding_contraction(R12, R21, zero=ZERO) -> dict[tuple, object]:
    """``sum_{c,d} (-1)^{|c||d| + |a||b|} R_{bacd}(x2,x1) R_{dcpq}(x1,x2)`` keyed by (a, b, p, q)."""
    p = STD_PARITY
    t21 = _nonzero_by_input(R21)
    t12 = _nonzero_by_input(R12)
    acc: dict[tuple, object] = {}
    for (b, a), outs in t21.items():
        for c, d, r21 in outs:
            s = (p[c] * p[d] + p[a] * p[b]) % 2
            for pp, q, r12 in t12.get((d, c), ()):
                key = (a, b, pp, q)
                term = r21 * r12
                acc[key] = acc.get(key, zero) + (-term if s else term)
    return acc


def check_braiding_unitarity(R12: RMatrix, R21: RMatrix) -> CheckReport:
    """``(-1)^{|c||d| + |a||b|} R_{bacd}(x2,x1) R_{dcpq}(x1,x2) = delta_ap delta_bq``."""
    acc = braiding_contraction(R12, R21, ZERO)
    bad = []
    for a in range(4):
        for b in range(4):
            for pp in range(4):
                for q in range(4):
                    want = ONE if (a == pp and b == q) else ZERO
                    if acc.get((a, b, pp, q), ZERO) != want:
                        bad.append((a + 1, b + 1, pp + 1, q + 1))
    return CheckReport(not bad, 256, bad)


# ----------------------------------------------------------------------
# Casimir and projectors
# ----------------------------------------------------------------------

class DegenerateSpectrumError(ValueError):
    def __init__(self, c1, c2, collisions):
        self.c1, self.c2, self.collisions = c1, c2, collisions
        super().__init__(f"Casimir eigenvalues collide at c1={c1}, c2={c2}: {collisions}")


def casimir_eigenvalues(c1, c2) -> tuple[Scalar, Scalar, Scalar]:
    return (c1 * c2, (1 + c1) * (1 + c2), (c1 + c2 + 2 * c1 * c2) * Fraction(1, 2))


@dataclass(frozen=True)
class SpectralData:
    casimir: GradedMatrix = field(repr=False)
    eigenvalues: tuple[Scalar, Scalar, Scalar]
    projectors: tuple[GradedMatrix, GradedMatrix, GradedMatrix] = field(repr=False)


def tensor_casimir(pair) -> GradedMatrix:
    r1, r2 = pair
    h = Fraction(1, 2)
    K = graded_kron
    return (K(r1.E(3), r2.F(3)) * -h + K(r1.E(2), r2.F(2)) * h
            + K(r1.F(3), r2.E(3)) * h - K(r1.F(2), r2.E(2)) * h
            - K(r1.F(1), r2.E(1)) * h - K(r1.E(1), r2.F(1)) * h
            + K(r1.H(2), r2.H(2))
            + (K(r1.H(1), r2.H(2)) + K(r1.H(2), r2.H(1))) * h)


def spectral(pair) -> SpectralData:
    r1, r2 = pair
    c1, c2 = r1.params.c, r2.params.c
    lam = casimir_eigenvalues(c1, c2)
    names = ("lambda1", "lambda2", "lambda3")
    coll = [f"{names[i]}={names[j]}" for i in range(3) for j in range(i + 1, 3)
            if lam[i] == lam[j]]
    if coll:
        raise DegenerateSpectrumError(c1, c2, coll)
    C = tensor_casimir(pair)
    one = identity(TENSOR_PARITY)
    projs = []
    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        num = (C - one * lam[j]) @ (C - one * lam[k])
        projs.append(num * ((lam[i] - lam[j]) * (lam[i] - lam[k])).inverse())
    return SpectralData(C, lam, tuple(projs))


def spectral_coefficients(du, c1, c2) -> tuple[Scalar, Scalar, Scalar]:
    """Coefficients of P1, P2, P3 in the normalised R-matrix."""
    den = (-1 + du - c2) * (du - c2)
    if not den:
        raise RMatrixPoleError(f"delta u = {du} hits a pole")
    return ((du + c1) * (1 + du + c1) / den, ONE, (1 + du + c1) / (-1 + du - c2))


def spectral_r(pair, data: SpectralData | None = None) -> GradedMatrix:
    data = data or spectral(pair)
    r1, r2 = pair
    du = r1.params.u - r2.params.u
    k = spectral_coefficients(du, r1.params.c, r2.params.c)
    return sum((P * kk for P, kk in zip(data.projectors[1:], k[1:])), data.projectors[0] * k[0])


def pair_reps(p1: RepParams, p2: RepParams, level_cap: int = 1):
    return build_rep(p1, level_cap), build_rep(p2, level_cap)


def tilde_params(p: RepParams, a=None, b=None, d=None, e=None) -> RepParams:
    """Inverse-antipode substitution ``c -> -c - 1``, ``u -> u + c + 1``."""
    return replace(p, c=-p.c - 1, u=p.u + p.c + 1,
                   a=p.a if a is None else a, b=p.b if b is None else b,
                   d=p.d if d is None else d, e=p.e if e is None else e)
