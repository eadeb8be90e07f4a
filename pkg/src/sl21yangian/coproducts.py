"""Level-0 and level-1 coproducts, their opposites, and the antipode.

Level-one coproducts have the form ``x (x) 1 + 1 (x) x + tail`` with the
tails below, valid for both representation kinds once E3 = [E1, E2] and
F3 = [F1, F2] are computed inside each representation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .algebra import (
    ZERO,
    GradedMatrix,
    TENSOR_PARITY,
    graded_kron,
    identity,
)
from .representations import (
    CARTAN_SLOT,
    MINUS,
    PLUS,
    GenKey,
    Violation,
    YangianRep,
    drinfeld_relations,
)

# (coefficient, left factor, right factor); names resolve through YangianRep.E/F/H
TAILS: dict[tuple[int, str], tuple[tuple[int, str, str], ...]] = {
    (2, CARTAN_SLOT): ((1, "H2", "H2"), (1, "F1", "E1"), (-1, "F3", "E3")),
    (1, CARTAN_SLOT): ((1, "H1", "H1"), (-2, "F1", "E1"), (1, "F2", "E2"), (1, "F3", "E3")),
    (2, PLUS): ((1, "H2", "E2"), (1, "F1", "E3")),
    (2, MINUS): ((1, "F2", "H2"), (-1, "F3", "E1")),
    (1, PLUS): ((1, "H1", "E1"), (-1, "F2", "E3")),
    (1, MINUS): ((1, "F1", "H1"), (1, "F3", "E2")),
}

GENERATORS: tuple[GenKey, ...] = tuple(
    (i, slot, n) for n in (0, 1) for i in (1, 2) for slot in (PLUS, MINUS, CARTAN_SLOT))


class UnknownGeneratorError(KeyError):
    pass


def level0(rep: YangianRep, name: str) -> GradedMatrix:
    kind, idx = name[0], int(name[1])
    return {"E": rep.E, "F": rep.F, "H": rep.H}[kind](idx)


def _check_key(gen: GenKey):
    i, slot, n = gen
    if i not in (1, 2) or slot not in (PLUS, MINUS, CARTAN_SLOT) or n not in (0, 1):
        raise UnknownGeneratorError(gen)


def tail(gen: GenKey):
    _check_key(gen)
    return TAILS[(gen[0], gen[1])] if gen[2] == 1 else ()


def coproduct(gen: GenKey, pair: tuple[YangianRep, YangianRep], *,
              drop_tail: bool = False) -> GradedMatrix:
    """16x16 image of ``Delta(gen)`` on ``rep1 (x) rep2``."""
    _check_key(gen)
    r1, r2 = pair
    out = graded_kron(r1.gen(gen), identity()) + graded_kron(identity(), r2.gen(gen))
    if not drop_tail:
        for coef, left, right in tail(gen):
            out = out + graded_kron(level0(r1, left), level0(r2, right)) * coef
    return out


def opposite_coproduct(gen: GenKey, pair: tuple[YangianRep, YangianRep]) -> GradedMatrix:
    """``Delta^op``: each tail term ``A (x) B`` becomes ``(-1)^{|A||B|} B (x) A``."""
    _check_key(gen)
    r1, r2 = pair
    out = graded_kron(r1.gen(gen), identity()) + graded_kron(identity(), r2.gen(gen))
    for coef, left, right in tail(gen):
        A2, B1 = level0(r2, left), level0(r1, right)
        sign = -1 if A2.degree() * B1.degree() else 1
        out = out + graded_kron(B1, A2) * (coef * sign)
    return out


@dataclass(frozen=True)
class CoproductTable:
    pair: tuple[YangianRep, YangianRep]
    images: Mapping[GenKey, GradedMatrix] = field(repr=False)
    opposite: bool = False


def coproduct_table(pair, opposite: bool = False) -> CoproductTable:
    fn = opposite_coproduct if opposite else coproduct
    return CoproductTable(pair, {g: fn(g, pair) for g in GENERATORS}, opposite)


def verify_coproduct_homomorphism(pair, level_cap: int = 1, *,
                                  images: Mapping[GenKey, GradedMatrix] | None = None
                                  ) -> list[Violation]:
    """Drinfeld relations among the 16x16 coproduct images (levels 0 and 1)."""
    if level_cap > 1:
        raise ValueError("coproducts are only available up to level 1")
    imgs = dict(images) if images is not None else coproduct_table(pair).images

    def gen(i, slot, n):
        return imgs[(i, slot, n)]

    return [Violation(name, idx, len(res.entries))
            for name, idx, res in drinfeld_relations(gen, level_cap) if not res.is_zero()]


# ----------------------------------------------------------------------
# antipode
# ----------------------------------------------------------------------

def antipode(gen: GenKey, rep: YangianRep) -> GradedMatrix:
    """``S(gen)`` in ``rep`` from ``mu (S (x) 1) Delta = eta epsilon``.

    With the counit vanishing on generators and ``S = -id`` at level zero,
    ``S(x) = -x + sum_k a_k b_k`` over the tail ``sum_k a_k (x) b_k``.
    """
    out = -rep.gen(gen)
    for coef, left, right in tail(gen):
        out = out + (level0(rep, left) @ level0(rep, right)) * coef
    return out


antipode_level1 = antipode


def antipode_squared(gen: GenKey, rep: YangianRep) -> GradedMatrix:
    """``S^2(gen)`` using that S is a graded anti-homomorphism."""
    out = rep.gen(gen)
    for coef, left, right in tail(gen):
        A, B = level0(rep, left), level0(rep, right)
        # S(-x + sum a b) = x + sum S(a b) - ... ; S(ab) = (-1)^{|a||b|} S(b) S(a) = (-1)^{|a||b|} b a
        sign = -1 if A.degree() * B.degree() else 1
        out = out - (A @ B) * coef + (B @ A) * (coef * sign)
    return out


def inverse_antipode(gen: GenKey, rep: YangianRep) -> GradedMatrix:
    """``S^{-1}(xi_{i,1}) = S(xi_{i,1}) - xi_{i,0}``; equals ``S`` at level 0."""
    out = antipode(gen, rep)
    i, slot, n = gen
    if n == 1:
        out = out - rep.gen((i, slot, 0))
    return out


def hopf_residual(gen: GenKey, rep: YangianRep) -> GradedMatrix:
    """``mu (S (x) 1) Delta(gen)`` in ``rep``; zero for every generator."""
    x = rep.gen(gen)
    Sx = antipode(gen, rep)
    out = Sx + x  # S(x) * 1 + S(1) * x
    for coef, left, right in tail(gen):
        out = out + (-level0(rep, left) @ level0(rep, right)) * coef
    return out


def graded_permutation() -> GradedMatrix:
    """``P (v1 (x) v2) = (-1)^{|v1||v2|} v2 (x) v1`` on the 16-dim space."""
    p = (0, 0, 1, 1)
    ent = {}
    for i in range(4):
        for j in range(4):
            ent[(4 * j + i, 4 * i + j)] = -1 if p[i] * p[j] else 1
    return GradedMatrix(TENSOR_PARITY, ent)


__all__ = [
    "TAILS", "GENERATORS", "coproduct", "opposite_coproduct", "coproduct_table",
    "CoproductTable", "verify_coproduct_homomorphism", "antipode", "antipode_level1",
    "antipode_squared", "inverse_antipode", "hopf_residual", "graded_permutation",
    "UnknownGeneratorError", "ZERO",
]
