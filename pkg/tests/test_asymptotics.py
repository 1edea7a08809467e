"""Tests for the closed-form expansion module."""
import math

import pytest

from lapasym import decomposition
from lapasym.asymptotics import (ExpansionForm, axis_sum_expansion,
                                 edge_sum_decay_coefficient, exp_tail_limit,
                                 exp_tail_limit_series, log_cos_closed_forms,
                                 model_for_lattice, quartic_factor_params,
                                 restricted_integral_constants,
                                 restricted_integral_expansion,
                                 square_integral_expansion,
                                 square_integral_form, square_sum_expansion,
                                 square_sum_form, triangular_sum_form,
                                 union_jack_sum_form)
from lapasym.exceptions import DomainError
from lapasym.quadrature import integrate_1d
from lapasym.specfun import CONSTANTS


def test_expansion_form_evaluation_is_literal():
    form = ExpansionForm(c0=0.25, c1=-1.5, c2=2.0, c3=-3.0)
    n = 37
    expected = 0.25 * n * n * math.log(n) - 1.5 * n * n + 2.0 * n - 3.0
    assert form.evaluate(n) == pytest.approx(expected, rel=1e-15)


def test_leading_coefficients():
    assert square_sum_form().c0 == pytest.approx(2.0 / math.pi, rel=1e-15)
    assert triangular_sum_form().c0 == pytest.approx(math.sqrt(3.0) / math.pi, rel=1e-15)
    assert union_jack_sum_form().c0 == pytest.approx(4.0 / (3.0 * math.pi), rel=1e-15)


def test_square_second_coefficient():
    expected = (2.0 / math.pi) * (
        CONSTANTS.euler_gamma
        + math.log(4.0 * math.sqrt(2.0 * math.pi) / CONSTANTS.gamma_quarter ** 2))
    assert square_sum_form().c1 == pytest.approx(expected, rel=1e-15)


def test_square_integral_coefficients():
    f = square_integral_form()
    assert f.c0 == pytest.approx(2.0 / math.pi, rel=1e-15)
    expected = (1.0 / math.pi) * (
        math.log(8.0 / math.pi ** 2) + 4.0 * CONSTANTS.catalan_G / math.pi)
    assert f.c1 == pytest.approx(expected, rel=1e-15)
    # at n = 1 the log term drops out
    assert square_integral_expansion(1) == pytest.approx(f.c1, rel=1e-15)


def test_integral_minus_sum_model_is_pure_n2():
    c = square_integral_form().c1 - square_sum_form().c1
    for n in (10, 100, 1000):
        diff = square_integral_expansion(n) - square_sum_expansion(n)
        assert diff == pytest.approx(c * n * n, rel=1e-12)


def test_model_registry():
    assert model_for_lattice("square").label == "square"
    with pytest.raises(DomainError):
        model_for_lattice("kagome")


@pytest.mark.parametrize("form", [square_sum_form(), triangular_sum_form(),
                                  union_jack_sum_form()],
                         ids=lambda f: f.label)
def test_models_monotone_from_three(form):
    values = [form.evaluate(n) for n in range(3, 51)]
    assert all(b > a for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# Restricted-integral expansion
# ---------------------------------------------------------------------------

def test_factorization_constant_windows():
    k = restricted_integral_constants()
    assert 30.85 < k.mu < 30.87
    assert 5.55 < k.nu < 5.57
    assert 0.08 < k.rho < 0.10
    assert k.mu == pytest.approx(
        math.sqrt(24.0 ** 2 + 48.0 * math.pi ** 2 - math.pi ** 4), rel=1e-15)


def test_quartic_factor_params_limits():
    # 2u - 1 -> nu and 1 - 1/u -> (nu-1)/(nu+1) as n grows
    k = restricted_integral_constants()
    _, u = quartic_factor_params(10 ** 6)
    assert abs(2.0 * u - 1.0 - k.nu) <= 1e-4
    assert abs(1.0 - 1.0 / u - (k.nu - 1.0) / (k.nu + 1.0)) <= 1e-4


def test_clausen_term_matches_log_integral_route():
    # lambda must equal -J11(nu) - J21((nu-1)/(nu+1)) - pi log 2 exactly
    k = restricted_integral_constants()
    j11, _ = log_cos_closed_forms(k.nu, "gt1")
    j21, _ = log_cos_closed_forms((k.nu - 1.0) / (k.nu + 1.0), "in01")
    rebuilt = -j11 - j21 - math.pi * math.log(2.0)
    assert k.clausen_term == pytest.approx(rebuilt, abs=1e-12)


def test_linear_coefficient_matches_log_integral_route():
    k = restricted_integral_constants()
    _, j12 = log_cos_closed_forms(k.nu, "gt1")
    _, j22 = log_cos_closed_forms((k.nu - 1.0) / (k.nu + 1.0), "in01")
    via_route = (96.0 / (math.pi ** 2 * k.mu)) * (
        (k.nu + 1.0) * j12 + 2.0 / (k.nu + 1.0) * j22)
    r = math.sqrt((k.nu + 1.0) / (k.nu - 1.0))
    direct = (96.0 / (math.pi ** 2 * k.mu)) * (
        2.0 * r * math.atan(r)
        + math.log((math.sqrt(k.nu) + 1.0) / (math.sqrt(k.nu) - 1.0)) / math.sqrt(k.nu))
    assert direct == pytest.approx(via_route, abs=1e-12)


def test_linear_term_vanishes_mod_two():
    # the linear term carries a 2 - n0 factor, so at n0 = 2 the expansion
    # is purely n^2 log n + c1 n^2: the extracted c1 is size independent
    n1, n2 = 402, 802
    c1_a = (restricted_integral_expansion(n1)
            - (2.0 / math.pi) * n1 * n1 * math.log(n1)) / (n1 * n1)
    c1_b = (restricted_integral_expansion(n2)
            - (2.0 / math.pi) * n2 * n2 * math.log(n2)) / (n2 * n2)
    assert c1_a == pytest.approx(c1_b, abs=1e-13)


# ---------------------------------------------------------------------------
# Closed forms of the log-cosine integrals
# ---------------------------------------------------------------------------

def test_outside_value_at_two():
    # J12(2) = 2/sqrt(3) atan(sqrt 3) = 2 pi / (3 sqrt 3)
    _, j12 = log_cos_closed_forms(2.0, "gt1")
    assert j12 == pytest.approx(2.0 * math.pi / (3.0 * math.sqrt(3.0)), rel=1e-14)


def test_inside_derivative_near_one():
    _, j22 = log_cos_closed_forms(1.0 - 1e-6, "in01")
    assert j22 == pytest.approx(1.0, abs=1e-5)


def test_regime_validation():
    with pytest.raises(DomainError):
        log_cos_closed_forms(0.5, "gt1")
    with pytest.raises(DomainError):
        log_cos_closed_forms(1.5, "in01")
    with pytest.raises(DomainError):
        log_cos_closed_forms(2.0, "elsewhere")


def test_inside_closed_form_at_factorization_point():
    k = restricted_integral_constants()
    a = (k.nu - 1.0) / (k.nu + 1.0)
    j21, _ = log_cos_closed_forms(a, "in01")
    quad = integrate_1d(lambda t: math.log(math.cos(t) + a), 0.0, math.pi / 2).value
    assert j21 == pytest.approx(quad, abs=1e-9)


# ---------------------------------------------------------------------------
# Row-sum limit constants
# ---------------------------------------------------------------------------

def test_edge_decay_components():
    cal = math.sqrt(1.0 + (math.pi ** 2 / 12.0) * (1.0 - math.pi ** 2 / 48.0))
    assert cal == pytest.approx(math.sqrt(1.0 + 0.82247 * 0.794383), abs=1e-5)
    # the inverse-sqrt component equals the cascade profile at the edge
    row = decomposition.cascade_profile(1.0)
    s6 = 2.0 * math.sqrt(6.0)
    root = math.sqrt(48.0 - math.pi ** 2)
    a11 = (s6 / root) * (math.sqrt(1.0 + cal) / cal)
    assert row.alpha[11] == pytest.approx(a11, rel=1e-14)


def test_edge_sum_decay_against_direct_sums():
    beta3 = edge_sum_decay_coefficient()
    for n in (200, 400):
        gap = abs(n * decomposition.piece_sums(n).r_edge - beta3)
        assert gap <= 6.0 / n


def test_exp_tail_limit_routes_agree():
    assert exp_tail_limit() == pytest.approx(exp_tail_limit_series(), abs=1e-12)
    assert exp_tail_limit() > 0.0


def test_exp_tail_limit_against_direct_sum():
    assert abs(decomposition.piece_sums(100).r_exp - exp_tail_limit()) <= 1e-3


def test_axis_sum_expansion_values():
    n = 1000
    s3 = math.sqrt(3.0)
    c1 = (math.pi / (2.0 * s3)) * math.log((4.0 * s3 + math.pi) / (4.0 * s3 - math.pi)) - 4.0
    assert axis_sum_expansion(n) == pytest.approx(math.pi ** 2 / 6.0 + c1 / n, rel=1e-15)
    assert axis_sum_expansion(10 ** 9) == pytest.approx(math.pi ** 2 / 6.0, abs=1e-8)


def test_axis_sum_expansion_against_direct():
    for n in (100, 200, 400):
        gap = abs(decomposition.piece_sums(n).q_axis - axis_sum_expansion(n))
        assert gap <= 12.0 / (n * n)
