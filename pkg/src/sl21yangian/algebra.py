"""Exact scalars and graded (Z2) linear algebra on small super vector spaces.

Basis indices are 0-based internally.  The four-dimensional space has two
even states (labels 1, 2) and two odd states (labels 3, 4); the helper
:func:`E` takes the 1-based labels.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Scalar",
    "as_scalar",
    "ZERO",
    "ONE",
    "I",
    "GradedMatrix",
    "STD_PARITY",
    "TENSOR_PARITY",
    "E",
    "identity",
    "diag",
    "graded_kron",
    "supertranspose",
    "partial_supertranspose",
    "graded_flip",
    "bracket",
    "anticommutator",
    "nullspace",
    "SupertransposeConvention",
]


class Scalar:
    """Gaussian rational ``re + i*im`` with exact :class:`Fraction` parts.

    Division by zero raises :class:`ZeroDivisionError`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            re, im = re.re, re.im + Fraction(im)
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``"3/4"``, ``"-2"``, ``"1/2+3i"``, ``"-i"`` or ``"0.25"``."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith(("i", "j")):
            return cls(Fraction(s))
        body = s[:-1]
        # split "re+im" at the last sign that is not an exponent or leading sign
        m = re.match(r"^(.*?)([+-])([^+-]*)$", body)
        if m and m.group(1) and not m.group(1).endswith(("e", "E")):
            re_part, sign, im_part = m.groups()
            im_val = Fraction(im_part) if im_part else Fraction(1)
            return cls(Fraction(re_part), im_val if sign == "+" else -im_val)
        if body in ("", "+"):
            return cls(0, 1)
        if body == "-":
            return cls(0, -1)
        return cls(0, Fraction(body))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return Scalar._new(self.re * o.re, _F0)
        return Scalar._new(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return Scalar._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by exact zero")
            return Scalar._new(1 / self.re, _F0)
        n = self.re * self.re + self.im * self.im
        return Scalar._new(self.re / n, -self.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar._new(self.re, -self.im)

    # comparisons ------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def real_fraction(self) -> Fraction:
        """The value as a Fraction; raises if the imaginary part is nonzero."""
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __lt__(self, other):
        return self.real_fraction() < _coerce(other).real_fraction()

    def __le__(self, other):
        return self.real_fraction() <= _coerce(other).real_fraction()

    def __gt__(self, other):
        return self.real_fraction() > _coerce(other).real_fraction()

    def __ge__(self, other):
        return self.real_fraction() >= _coerce(other).real_fraction()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self):
        """Lossless JSON form: ``"n/d"`` when real, else ``{"re", "im"}``."""
        if not self.im:
            return _frac_str(self.re)
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


_F0 = Fraction(0)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._new(Fraction(x), _F0)
    return None


def as_scalar(x) -> Scalar:
    """Coerce int, Fraction, str or Scalar to :class:`Scalar` (floats refused)."""
    if isinstance(x, str):
        return Scalar.parse(x)
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot make an exact scalar from {type(x).__name__}")
    return s


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

STD_PARITY = (0, 0, 1, 1)
TENSOR_PARITY = tuple((p + q) % 2 for p in STD_PARITY for q in STD_PARITY)


# ----------------------------------------------------------------------
# graded matrices
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """Square matrix over :class:`Scalar` with a parity vector on its basis.

    Storage is sparse: ``entries`` maps ``(row, col)`` to nonzero scalars.
    """

    parity: tuple[int, ...]
    entries: Mapping[tuple[int, int], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.parity)
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"entry {(i, j)} outside a {n}x{n} matrix")
            v = as_scalar(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], parity: Sequence[int]) -> "GradedMatrix":
        if len(rows) != len(parity) or any(len(r) != len(parity) for r in rows):
            raise ValueError("rows do not match the parity vector")
        return cls(tuple(parity), {(i, j): v for i, r in enumerate(rows)
                                   for j, v in enumerate(r) if v})

    @property
    def dim(self) -> int:
        return len(self.parity)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        return self.entries.get(ij, ZERO)

    def rows(self) -> list[list[Scalar]]:
        n = self.dim
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def degree(self) -> int | None:
        """Z2 degree if homogeneous, ``None`` otherwise (zero counts as even)."""
        degs = {(self.parity[i] + self.parity[j]) % 2 for i, j in self.entries}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def _check(self, other: "GradedMatrix"):
        if self.parity != other.parity:
            raise ValueError("parity / dimension mismatch")

    def __add__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return GradedMatrix(self.parity, out)

    def __sub__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return GradedMatrix(self.parity, {k: -v for k, v in self.entries.items()})

    def __mul__(self, s):
        s = _coerce(s)
        if s is None:
            return NotImplemented
        return GradedMatrix(self.parity, {k: v * s for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check(other)
        by_row: dict[int, list[tuple[int, Scalar]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Scalar] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                out[key] = out.get(key, ZERO) + a * b
        return GradedMatrix(self.parity, out)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.parity == other.parity and self.entries == other.entries

    def __hash__(self):
        return hash((self.parity, frozenset(self.entries.items())))

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
        """Act on a sparse column vector ``{index: coefficient}``."""
        out: dict[int, Scalar] = {}
        for (i, j), v in self.entries.items():
            if j in vec:
                out[i] = out.get(i, ZERO) + v * vec[j]
        return {k: v for k, v in out.items() if v}

    def inverse(self) -> "GradedMatrix":
        n = self.dim
        aug = [self.rows()[i] + [ONE if i == j else ZERO for j in range(n)]
               for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return GradedMatrix.from_rows([row[n:] for row in aug], self.parity)

    def map(self, fn) -> "GradedMatrix":
        return GradedMatrix(self.parity, {k: fn(v) for k, v in self.entries.items()})

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self.entries.items()))
        return f"GradedMatrix(dim={self.dim}, {{{inner}}})"


def E(i: int, j: int, parity: Sequence[int] = STD_PARITY) -> GradedMatrix:
    """Matrix unit with a single 1 in row ``i``, column ``j`` (1-based labels)."""
    return GradedMatrix(tuple(parity), {(i - 1, j - 1): ONE})


def identity(parity: Sequence[int] = STD_PARITY) -> GradedMatrix:
    return GradedMatrix(tuple(parity), {(k, k): ONE for k in range(len(parity))})


def diag(values: Iterable, parity: Sequence[int] = STD_PARITY) -> GradedMatrix:
    return GradedMatrix(tuple(parity), {(k, k): v for k, v in enumerate(values)})


def graded_kron(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """Graded tensor product on the row-major basis ``(i, j) -> dim_B*i + j``.

    Acting on states, ``(X (x) Z)(v1 (x) v2) = (-1)^{|Z||v1|} X v1 (x) Z v2``;
    entrywise this is the sign ``(-1)^{(p(j)+p(l)) p(k)}`` on
    ``A[i,k] B[j,l]``, which also covers inhomogeneous ``B``.
    """
    pa, pb = A.parity, B.parity
    nb = len(pb)
    parity = tuple((p + q) % 2 for p in pa for q in pb)
    out = {}
    for (i, k), a in A.entries.items():
        for (j, l), b in B.entries.items():
            v = a * b
            if (pb[j] + pb[l]) * pa[k] % 2:
                v = -v
            out[(i * nb + j, k * nb + l)] = v
    return GradedMatrix(parity, out)


class SupertransposeConvention:
    """Sign conventions ``sigma(i, j)`` for ``(A^st)_{ij} = sigma(i, j) A_{ji}``."""

    ROW = "row"        # (-1)^{p(i)(p(i)+p(j))}
    COLUMN = "column"  # (-1)^{p(j)(p(i)+p(j))}

    @staticmethod
    def sign(convention: str, pi: int, pj: int) -> int:
        if convention == SupertransposeConvention.ROW:
            e = pi * (pi + pj)
        elif convention == SupertransposeConvention.COLUMN:
            e = pj * (pi + pj)
        else:
            raise ValueError(f"unknown supertranspose convention {convention!r}")
        return -1 if e % 2 else 1


DEFAULT_ST = SupertransposeConvention.COLUMN


def supertranspose(A: GradedMatrix, convention: str = DEFAULT_ST) -> GradedMatrix:
    p = A.parity
    out = {}
    for (i, j), v in A.entries.items():
        # entry A_{ij} lands at (j, i) with sigma(j, i)
        s = SupertransposeConvention.sign(convention, p[j], p[i])
        out[(j, i)] = v if s > 0 else -v
    return GradedMatrix(p, out)


def _split_tensor(M: GradedMatrix, pa: Sequence[int], pb: Sequence[int]):
    """Yield ``(i, k, j, l, coeff)`` with ``M = sum coeff * graded_kron(E_ik, E_jl)``."""
    nb = len(pb)
    for (r, c), v in M.entries.items():
        i, j = divmod(r, nb)
        k, l = divmod(c, nb)
        if (pb[j] + pb[l]) * pa[k] % 2:
            v = -v
        yield i, k, j, l, v


def partial_supertranspose(M: GradedMatrix, slot: int, convention: str = DEFAULT_ST,
                           factor_parity: Sequence[int] = STD_PARITY) -> GradedMatrix:
    """Supertranspose of a two-factor operator in tensor slot 1 or 2."""
    if slot not in (1, 2):
        raise ValueError("slot must be 1 or 2")
    pa = pb = tuple(factor_parity)
    if M.dim != len(pa) * len(pb):
        raise ValueError("dimension is not a product of the factor dimensions")
    out = GradedMatrix(M.parity, {})
    terms: dict[tuple[int, int], Scalar] = {}
    for i, k, j, l, v in _split_tensor(M, pa, pb):
        if slot == 1:
            s = SupertransposeConvention.sign(convention, pa[k], pa[i])
            A = GradedMatrix(pa, {(k, i): ONE if s > 0 else -ONE})
            B = GradedMatrix(pb, {(j, l): ONE})
        else:
            s = SupertransposeConvention.sign(convention, pb[l], pb[j])
            A = GradedMatrix(pa, {(i, k): ONE})
            B = GradedMatrix(pb, {(l, j): ONE if s > 0 else -ONE})
        for key, w in graded_kron(A, B).entries.items():
            terms[key] = terms.get(key, ZERO) + v * w
    return GradedMatrix(out.parity, terms)


def graded_flip(M: GradedMatrix, factor_parity: Sequence[int] = STD_PARITY) -> GradedMatrix:
    """Image of ``sum A (x) B`` under ``A (x) B -> (-1)^{|A||B|} B (x) A``."""
    p = tuple(factor_parity)
    terms: dict[tuple[int, int], Scalar] = {}
    for i, k, j, l, v in _split_tensor(M, p, p):
        if (p[i] + p[k]) * (p[j] + p[l]) % 2:
            v = -v
        for key, w in graded_kron(GradedMatrix(p, {(j, l): ONE}),
                                  GradedMatrix(p, {(i, k): ONE})).entries.items():
            terms[key] = terms.get(key, ZERO) + v * w
    return GradedMatrix(M.parity, terms)


def _deg(A: GradedMatrix) -> int:
    d = A.degree()
    if d is None:
        raise ValueError("graded bracket needs homogeneous operands")
    return d


def bracket(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """Graded commutator ``AB - (-1)^{|A||B|} BA``."""
    if _deg(A) * _deg(B):
        return A @ B + B @ A
    return A @ B - B @ A


def anticommutator(A: GradedMatrix, B: GradedMatrix) -> GradedMatrix:
    """``AB + (-1)^{|A||B|} BA``."""
    if _deg(A) * _deg(B):
        return A @ B - B @ A
    return A @ B + B @ A


# ----------------------------------------------------------------------
# exact kernel
# ----------------------------------------------------------------------

def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Scalar]]:
    """Exact basis of ``{v : M v = 0}``.

    Fraction-free (Bareiss) elimination to row echelon form, pivoting on the
    leftmost nonzero column and the first row with a nonzero entry there,
    followed by back substitution with one free variable set to 1 per basis
    vector.
    """
    M = [[as_scalar(x) for x in r] for r in rows if any(r)]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    nrows = len(M)
    pivots: list[int] = []
    prev = ONE
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((k for k in range(r, nrows) if M[k][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for k in range(r + 1, nrows):
            mk = M[k][c]
            row_k = M[k]
            row_r = M[r]
            for j in range(c, ncols):
                row_k[j] = (p * row_k[j] - mk * row_r[j]) / prev
        # rows above are untouched; row r keeps its scale
        prev = p
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row_idx in range(len(pivots) - 1, -1, -1):
            c = pivots[row_idx]
            row = M[row_idx]
            s = ZERO
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    s = s + row[j] * x[j]
            x[c] = -s / row[c]
        basis.append(x)
    return basis
