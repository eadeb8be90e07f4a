import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings

from sl21yangian.algebra import I, E, Scalar, bracket, diag, identity
from sl21yangian.representations import (
    ANTIPODE,
    CARTAN_SLOT,
    CONJUGATE,
    DIRECT,
    INVERSE_ANTIPODE,
    MINUS,
    PLUS,
    ConstraintError,
    DegenerateRepresentationWarning,
    RepParams,
    XpmParams,
    antiparticle,
    barred_from_xpm,
    build_rep,
    check_conjugation,
    from_xpm,
    rapidity_over_2pi_i,
    rapidity_shift,
    verify_drinfeld,
)

from conftest import rationals

HALF = Fraction(1, 2)


@pytest.fixture
def simple_rep():
    return build_rep(RepParams(1, 1, 1, 1, 2, 0), 2)


def test_level_zero_read_off(simple_rep):
    assert simple_rep.E(2) == -E(1, 4) + E(3, 2)
    assert simple_rep.H(2) == -identity() - E(1, 1) - E(4, 4)
    assert simple_rep.E(1) == E(4, 3) and simple_rep.F(1) == E(3, 4)


def test_level_one_and_two(simple_rep):
    assert simple_rep.xi_plus(2, 1) == E(3, 2) * HALF + E(1, 4) * HALF
    assert simple_rep.kappa(2, 2) == diag([-HALF, Fraction(-1, 4), Fraction(-1, 4), -HALF])


def test_kappa_is_bracket_of_shifted_roots(direct_params):
    rep = build_rep(direct_params, 3)
    for n in range(4):
        assert rep.kappa(2, n) == bracket(rep.xi_plus(2, n), rep.xi_minus(2, 0))
        if n:
            assert rep.kappa(2, n) == bracket(rep.xi_plus(2, n - 1), rep.xi_minus(2, 1))


def test_constraints_enforced():
    with pytest.raises(ConstraintError):
        build_rep(RepParams(1, 1, 1, 1, 1, 0))
    with pytest.raises(ValueError):
        build_rep(RepParams(1, 1, 1, 1, 2, 0), -1)
    with pytest.raises(ValueError):
        RepParams(1, 1, 1, 1, 2, 0, kind="mixed")


def test_degenerate_rep_warns():
    with pytest.warns(DegenerateRepresentationWarning):
        build_rep(RepParams(1, 1, -1, -1, 0, 0), 1)


@pytest.mark.parametrize("kind", [DIRECT, CONJUGATE])
def test_generic_reps_satisfy_drinfeld(kind, rng):
    from sl21yangian.sampling import rep_params
    for _ in range(2):
        p = rep_params(rng, 300, kind)
        assert verify_drinfeld(build_rep(p, 4)) == []


@given(rationals(40, True), rationals(40, True), rationals(40), rationals(40))
@settings(max_examples=25, deadline=None)
def test_drinfeld_property_low_level(a, b, c, u):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateRepresentationWarning)
        rep = build_rep(RepParams.solve(a, b, c, u), 2)
    assert verify_drinfeld(rep) == []


def test_injected_cartan_fault_is_caught(direct_params):
    rep = build_rep(direct_params, 2).perturbed((2, CARTAN_SLOT, 1), E(1, 1))
    bad = verify_drinfeld(rep)
    assert any(v.relation == "[x+,x-]=d k" and v.indices == (2, 0, 2, 1) for v in bad)


def test_verify_above_cap_rejected(direct_params):
    with pytest.raises(ValueError):
        verify_drinfeld(build_rep(direct_params, 1), 2)


def test_antiparticle_simple_point():
    p = RepParams(1, 1, 1, 1, 2, 0)
    bar = antiparticle(p, ANTIPODE)
    assert bar.barred.c == -2 and bar.barred.u == 1
    assert bar.solution_dim == 0
    assert antiparticle(p, INVERSE_ANTIPODE).barred.u == 2


def test_antiparticle_shifts_rapidity_by_i_pi(direct_params):
    assert rapidity_shift(direct_params, antiparticle(direct_params)) == 1
    assert rapidity_over_2pi_i(0, 1) == -HALF


def test_antiparticle_twice_returns_c(direct_params):
    once = antiparticle(direct_params).barred
    twice = antiparticle(once).barred
    assert twice.c == direct_params.c
    assert rapidity_shift(direct_params, antiparticle(direct_params)) + rapidity_shift(
        once, antiparticle(once)) == 2


@pytest.mark.parametrize("variant", [ANTIPODE, INVERSE_ANTIPODE])
@pytest.mark.parametrize("level", [0, 1])
def test_conjugation_holds(direct_params, variant, level):
    rep = build_rep(direct_params, 1)
    report = check_conjugation(rep, antiparticle(direct_params, variant), level)
    assert report.passed and report.checked == (6 if level == 0 else 12)


def test_conjugation_gauge_freedom(direct_params):
    rep = build_rep(direct_params, 1)
    data = antiparticle(direct_params, gauge=(Fraction(2, 3), -5))
    assert check_conjugation(rep, data).passed


def test_half_shift_fault_fails_level_one(direct_params):
    rep = build_rep(direct_params, 1)
    good = antiparticle(direct_params)
    bad = type(good)(good.cmatrix, good.barred.with_u(good.barred.u + HALF), good.variant)
    assert check_conjugation(rep, bad, 0).passed
    report = check_conjugation(rep, bad, 1)
    assert not report.passed and all(g[2] == 1 for g in report.failures)


def test_inverse_antipode_needs_the_extra_shift(direct_params):
    rep = build_rep(direct_params, 1)
    wrong = antiparticle(direct_params, ANTIPODE)
    wrong = type(wrong)(wrong.cmatrix, wrong.barred, INVERSE_ANTIPODE)
    assert not check_conjugation(rep, wrong, 1).passed


@pytest.fixture
def xpm_point():
    return XpmParams.from_x_pair(2 + I, HALF - 3 * I, Fraction(3, 2))


def test_xpm_shortening_and_constraints(xpm_point):
    assert xpm_point.shortening_residual() == 0
    p = from_xpm(xpm_point, Fraction(1, 3))
    assert p.a * p.e == p.c + 1
    assert p.a * p.e == -I * (xpm_point.xplus - xpm_point.xminus)
    assert p.b * p.d == p.c


def test_xpm_barred_data_matches_solver(xpm_point):
    p = from_xpm(xpm_point, Fraction(1, 3))
    bar = barred_from_xpm(xpm_point)
    data = antiparticle(p, ANTIPODE, gauge=(bar["a"], bar["b"]))
    assert data.barred.d == bar["d"] and data.barred.e == bar["e"]
    rep = build_rep(p, 1)
    for level in (0, 1):
        assert check_conjugation(rep, data, level).passed


def test_crossed_xpm_stays_on_shell(xpm_point):
    assert xpm_point.crossed().shortening_residual() == 0
    assert xpm_point.crossed().crossed() == xpm_point


def test_from_xplus_recovers_a_root(xpm_point):
    xp = XpmParams.from_xplus(xpm_point.xplus, xpm_point.alpha, xpm_point.beta)
    ab = xpm_point.alpha * xpm_point.beta
    assert xp.shortening_residual() == 0
    assert xp.xminus in (xpm_point.xminus, ab / xpm_point.xminus)


def test_from_xplus_requires_gaussian_root():
    with pytest.raises(ValueError):
        XpmParams.from_xplus(Scalar(1), 1, 1)


def test_rep_json_round_trip(direct_params):
    d = direct_params.to_json()
    assert d["kind"] == DIRECT and set(d) == set("abcdeu") | {"kind"}


def test_generator_keys(simple_rep):
    assert simple_rep.gen((2, PLUS, 1)) == simple_rep.xi_plus(2, 1)
    assert simple_rep.gen((1, MINUS, 0)) == simple_rep.F(1)
