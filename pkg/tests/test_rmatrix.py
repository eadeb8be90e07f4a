from fractions import Fraction

import pytest

from sl21yangian.algebra import TENSOR_PARITY, bracket, identity, nullspace
from sl21yangian.coproducts import GENERATORS, coproduct
from sl21yangian.representations import (
    ANTIPODE,
    CONJUGATE,
    INVERSE_ANTIPODE,
    RepParams,
    antiparticle,
)
from sl21yangian.rmatrix import (
    BAR1_DIRECT,
    CONJ_CONJ,
    DIRECT_DIRECT,
    DIRECT_TILDE2,
    SOLVER_GENERATORS,
    DegenerateSpectrumError,
    KernelDimensionError,
    RMatrix,
    RMatrixPoleError,
    casimir_eigenvalues,
    check_braiding_unitarity,
    check_ybe,
    closed_form_r,
    intertwiner_system,
    intertwining_residuals,
    pair_reps,
    solve_r,
    spectral,
    spectral_coefficients,
    spectral_r,
)

from conftest import sample_pairs

SIMPLE = RepParams(1, 1, 1, 1, 2, 0)


def test_simple_pair_entries():
    p1, p2 = SIMPLE.with_u(4), SIMPLE.with_u(1)
    closed = closed_form_r(p1, p2)
    solved = solve_r(pair_reps(p1, p2))
    assert solved.matrix == closed.matrix
    e = closed.entries()
    assert (e["B"], e["C"], e["G"], e["L"], e["Gamma"], e["V"]) == (6, 1, 6, 10, 5, 5)
    assert (e["Theta"], e["alpha2"]) == (Fraction(1, 2), -2)


def test_barred_entry_at_simple_point():
    bar = antiparticle(SIMPLE).barred
    R = closed_form_r(bar.with_u(4 + 1), SIMPLE.with_u(1), BAR1_DIRECT)
    # du = 3 between the unbarred particles, c1 = c2 = 1
    assert R.entry("B") == Fraction(1, 3)


def test_coincident_point_is_involution():
    R = closed_form_r(SIMPLE, SIMPLE)
    e = R.entries()
    assert (e["C"], e["F"], e["B"], e["G"], e["Gamma"]) == (1, 1, 0, 0, -1)
    assert R.matrix @ R.matrix == identity(TENSOR_PARITY)
    assert solve_r(pair_reps(SIMPLE, SIMPLE)).matrix @ solve_r(
        pair_reps(SIMPLE, SIMPLE)).matrix == identity(TENSOR_PARITY)


def test_entry_pole():
    with pytest.raises(RMatrixPoleError):
        closed_form_r(SIMPLE.with_u(1), SIMPLE.with_u(0))


def test_unknown_kind():
    with pytest.raises(ValueError):
        closed_form_r(SIMPLE, SIMPLE, "bar1-bar2")


@pytest.mark.parametrize("kind", [DIRECT_DIRECT, CONJ_CONJ, BAR1_DIRECT, DIRECT_TILDE2])
def test_solver_matches_closed_form(kind):
    rk = CONJUGATE if kind == CONJ_CONJ else "direct"
    for p1, p2 in sample_pairs(31, 2, rk):
        if kind == BAR1_DIRECT:
            p1 = antiparticle(p1, ANTIPODE).barred
        elif kind == DIRECT_TILDE2:
            p2 = antiparticle(p2, INVERSE_ANTIPODE).barred
        closed = closed_form_r(p1, p2, kind)
        pair = pair_reps(p1, p2)
        assert solve_r(pair, kind).matrix == closed.matrix
        assert intertwining_residuals(closed.matrix, pair) == {}
        assert closed.off_pattern() == []
        if kind == DIRECT_DIRECT:
            assert closed.symmetry_defects() == []


def test_level_zero_alone_leaves_a_larger_kernel():
    p1, p2 = sample_pairs(32, 1)[0]
    unknowns, rows = intertwiner_system(pair_reps(p1, p2), SOLVER_GENERATORS[:6])
    assert len(nullspace(rows, len(unknowns))) > 1


def test_solver_needs_level_one():
    with pytest.raises(ValueError):
        solve_r(pair_reps(SIMPLE, SIMPLE.with_u(3), 0))


def test_kernel_dimension_error_message():
    assert "dimension 3" in str(KernelDimensionError(3))


def _perturb(R: RMatrix) -> RMatrix:
    m = R.matrix
    pos = (4 * 1 + 0, 4 * 0 + 1)  # the C entry, |12> -> |21>
    bumped = type(m)(m.parity, {**m.entries, pos: m[pos] + 1})
    return RMatrix(R.kind, R.params1, R.params2, bumped)


@pytest.mark.parametrize("kind, rk", [(DIRECT_DIRECT, "direct"), (CONJ_CONJ, CONJUGATE)])
def test_yang_baxter(kind, rk):
    from sl21yangian.sampling import SamplingSpec, triples
    for p1, p2, p3 in triples(SamplingSpec(33, 1, 200), rk):
        R12, R13, R23 = (closed_form_r(a, b, kind) for a, b in ((p1, p2), (p1, p3), (p2, p3)))
        report = check_ybe(R12, R13, R23)
        assert report.passed and report.checked == 4096
        assert check_ybe(_perturb(R12), R13, R23).violations


@pytest.mark.parametrize("kind, rk", [(DIRECT_DIRECT, "direct"), (CONJ_CONJ, CONJUGATE)])
def test_braiding_unitarity(kind, rk):
    for p1, p2 in sample_pairs(34, 2, rk):
        assert check_braiding_unitarity(closed_form_r(p1, p2, kind), closed_form_r(p2, p1, kind))


def test_braiding_unitarity_coincident():
    R = closed_form_r(SIMPLE, SIMPLE)
    assert check_braiding_unitarity(R, R).passed


def test_braiding_unitarity_mixed_pair():
    for p1, p2 in sample_pairs(35, 2):
        bar = antiparticle(p1).barred
        fwd = closed_form_r(bar, p2, BAR1_DIRECT)
        back = solve_r(pair_reps(p2, bar))
        assert check_braiding_unitarity(fwd, back).passed


def test_unitarity_fails_on_perturbed_entry():
    p1, p2 = sample_pairs(36, 1)[0]
    assert not check_braiding_unitarity(_perturb(closed_form_r(p1, p2)), closed_form_r(p2, p1))


def test_casimir_eigenvalues():
    assert casimir_eigenvalues(1, 2) == (2, 6, Fraction(7, 2))


def test_spectral_coefficients_match_entries():
    p1, p2 = SIMPLE.with_u(4), SIMPLE.with_u(1)
    k1, k2, k3 = spectral_coefficients(p1.u - p2.u, p1.c, p2.c)
    e = closed_form_r(p1, p2).entries()
    assert (k1, k2, k3) == (10, 1, 5)
    assert (k1, k3) == (e["L"], e["Gamma"])


def test_projectors_and_casimir():
    for p1, p2 in sample_pairs(37, 2):
        pair = pair_reps(p1, p2, 0)
        data = spectral(pair)
        for g in GENERATORS:
            if g[2] == 0:
                assert bracket(data.casimir, coproduct(g, pair)).is_zero()
        P = data.projectors
        for i in range(3):
            for j in range(3):
                prod = P[i] @ P[j]
                assert prod == P[i] if i == j else prod.is_zero()
        assert P[0] + P[1] + P[2] == identity(TENSOR_PARITY)
        assert spectral_r(pair, data) == closed_form_r(p1, p2).matrix


def test_degenerate_spectrum():
    c = Fraction(1, 3)
    p1 = RepParams.solve(1, 1, c)
    p2 = RepParams.solve(1, 1, -c, 5)
    with pytest.raises(DegenerateSpectrumError, match="lambda1=lambda3") as info:
        spectral(pair_reps(p1, p2, 0))
    assert info.value.collisions == ["lambda1=lambda3"]


def test_s_matrix_is_permuted_r():
    R = closed_form_r(SIMPLE.with_u(4), SIMPLE.with_u(1))
    S = R.s_matrix()
    assert S[(0, 0)] == 1 and S[(4, 1)] == R.entry("B")
