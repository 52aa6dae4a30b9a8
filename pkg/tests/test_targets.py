import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subosc.errors import CapacityError, DomainError, SynthesisError
from subosc.targets import (
    AnalyticTarget,
    ComplexPolynomial,
    best_remainder_bound,
    remainder_bound,
    select_order,
    taylor_product,
)

TWO_PI = 2 * math.pi


def exp_partial_sum(z, order):
    """sum_{n<=order} z**n / n! with exact factorials."""
    return sum(z**n / math.factorial(n) for n in range(order + 1))


def mp_function(target, carrier_rate):
    """Independent mpmath form of s(z) exp(-k z)."""
    k = mpmath.mpc(carrier_rate)
    if target.kind == "constant":
        s = lambda z: mpmath.mpc(target.value)
    elif target.kind == "complex_exponential":
        s = lambda z: mpmath.exp(mpmath.mpc(target.rate) * z)
    elif target.kind == "sinusoid":
        s = lambda z: mpmath.sin(target.frequency * z)
    elif target.kind == "polynomial":
        s = lambda z: mpmath.polyval([mpmath.mpc(c) for c in reversed(target.coefficients)], z)
    else:
        s = lambda z: mpmath.exp(-((z / target.width) ** 2))
    return lambda z: s(z) * mpmath.exp(-k * z)


# -- taylor_product -----------------------------------------------------


def test_constant_target_gives_carrier_series(one):
    p = taylor_product(one, 1j * TWO_PI, 19)
    expected = np.array([(-1j * TWO_PI) ** n / math.factorial(n) for n in range(20)])
    np.testing.assert_allclose(p.coefficients, expected, rtol=1e-13, atol=0)


def test_zero_rate_gives_unit_series(one):
    p = taylor_product(one, 0.0, 5)
    assert list(p.coefficients) == [1, 0, 0, 0, 0, 0]


def test_sinusoid_product_matches_high_precision_derivatives():
    target = AnalyticTarget.sinusoid(math.pi / 2)
    p = taylor_product(target, 1j * TWO_PI, 10)
    with mpmath.workdps(40):
        ref = mpmath.taylor(mp_function(target, 1j * TWO_PI), 0, 10)
    ref = np.array([complex(c) for c in ref])
    scale = np.max(np.abs(ref))
    np.testing.assert_allclose(p.coefficients, ref, rtol=1e-10, atol=1e-10 * scale)


targets = st.one_of(
    st.builds(
        AnalyticTarget.complex_exponential,
        st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
        st.floats(-2, 2),
    ),
    st.builds(
        AnalyticTarget.sinusoid,
        st.floats(0.1, 4) | st.floats(-4, -0.1),
        st.floats(-2, 2),
    ),
    st.builds(
        AnalyticTarget.polynomial,
        st.lists(st.floats(-3, 3), min_size=1, max_size=5),
        st.floats(-2, 2),
    ),
    st.builds(AnalyticTarget.gaussian, st.floats(0.5, 3), st.floats(-2, 2)),
)


@settings(max_examples=25, deadline=None)
@given(target=targets, omega=st.floats(0.5, 8))
def test_cauchy_product_matches_numerical_derivatives(target, omega):
    order = 8
    p = taylor_product(target, 1j * omega, order)
    with mpmath.workdps(40):
        ref = mpmath.taylor(mp_function(target, 1j * omega), target.expansion_point, order)
    ref = np.array([complex(c) for c in ref])
    scale = max(np.max(np.abs(ref)), 1e-300)
    np.testing.assert_allclose(p.coefficients, ref, rtol=1e-8, atol=1e-8 * scale)


def test_product_phase_is_folded_in():
    # expanding about t0 must still approximate s(t) exp(-i w t) in absolute time
    target = AnalyticTarget.sinusoid(1.3, expansion_point=0.7)
    p = taylor_product(target, 1j * 3.0, 40)
    t = np.linspace(0.2, 1.2, 11)
    np.testing.assert_allclose(p(t), np.sin(1.3 * t) * np.exp(-3j * t), atol=1e-12)


def test_negative_order_rejected(one):
    with pytest.raises(DomainError):
        taylor_product(one, 1j, -1)


def test_overflowing_coefficients_named():
    target = AnalyticTarget.complex_exponential(1e300)
    with pytest.raises(SynthesisError, match="c_2"):
        taylor_product(target, 0.0, 4)


@pytest.mark.parametrize(
    "target",
    [
        AnalyticTarget.constant(2.5),
        AnalyticTarget.complex_exponential(0.3 - 1.2j, 0.4),
        AnalyticTarget.sinusoid(2.0, -0.3),
        AnalyticTarget.polynomial([1, -2, 0.5, 3], 0.8),
        AnalyticTarget.gaussian(0.7, 1.1),
    ],
)
def test_taylor_coefficients_reproduce_target(target):
    t = target.expansion_point + np.linspace(-0.3, 0.3, 7)
    p = ComplexPolynomial(target.taylor_coefficients(40), target.expansion_point)
    np.testing.assert_allclose(p(t), target(t), atol=1e-12)


@pytest.mark.parametrize(
    "target",
    [
        AnalyticTarget.constant(-3.0),
        AnalyticTarget.complex_exponential(0.5 + 2j, 0.3),
        AnalyticTarget.sinusoid(1.7, 0.2),
        AnalyticTarget.polynomial([1, 0, -2, 1j], -0.5),
        AnalyticTarget.gaussian(0.8, 0.0),
        AnalyticTarget.gaussian(0.8, 3.0),
    ],
)
@pytest.mark.parametrize("R", [0.1, 1.0, 2.5])
def test_growth_bound_dominates_circle_samples(target, R):
    theta = np.linspace(0, TWO_PI, 721)
    z = target.expansion_point + R * np.exp(1j * theta)
    f = mp_function(target, 0.0)
    sampled = max(abs(complex(f(mpmath.mpc(complex(w))))) for w in z)
    assert target.growth_bound(R) >= sampled * (1 - 1e-12)


def test_polynomial_evaluation_is_exact_for_unit_sequence():
    p = ComplexPolynomial([1.0])
    assert np.all(p(np.array([-1e6, 0.0, 3.7, 1e6])) == 1)
    q = ComplexPolynomial([2 - 1j, 3.0], expansion_point=0.25)
    assert q(0.25) == 2 - 1j


def test_recentered_polynomial_is_the_same_function():
    p = ComplexPolynomial([1, 2j, -0.5, 0.1], expansion_point=0.3)
    q = p.recentered(-0.4)
    t = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(q(t), p(t), rtol=1e-13)


def test_target_json_round_trip():
    for target in [
        AnalyticTarget.constant(1 + 2j),
        AnalyticTarget.complex_exponential(-0.5j, 1.0),
        AnalyticTarget.sinusoid(2.0),
        AnalyticTarget.polynomial([1, 2j]),
        AnalyticTarget.gaussian(3.0),
    ]:
        assert AnalyticTarget.from_dict(target.to_dict()) == target


# -- remainder_bound ----------------------------------------------------


def test_remainder_bound_closed_form(one):
    # (2 pi / 4 pi)**20 * e**(4 pi) / (1 - 1/2) = 2**-19 e**(4 pi)
    b = remainder_bound(one, 1j * TWO_PI, 19, 1.0, 4 * math.pi)
    assert b.bound_value == pytest.approx(2.0**-19 * math.exp(4 * math.pi), rel=1e-12)
    assert b.bound_value == pytest.approx(0.547, abs=1e-3)


def test_remainder_bound_vanishes_at_zero_width(one):
    assert remainder_bound(one, 1j * TWO_PI, 19, 0.0, 3.0).bound_value == 0.0


def test_inadmissible_radius_rejected(one):
    with pytest.raises(DomainError):
        remainder_bound(one, 1j * TWO_PI, 19, 1.0, TWO_PI)
    with pytest.raises(DomainError):
        remainder_bound(one, 1j * TWO_PI, 19, 1.0, 1.0)


def test_actual_remainder_below_every_admissible_bound(one):
    actual = abs(exp_partial_sum(-1j * TWO_PI, 60) - exp_partial_sum(-1j * TWO_PI, 19))
    assert actual == pytest.approx(3.8e-3, rel=0.05)
    for r in np.geomspace(TWO_PI * 1.001, TWO_PI * 30, 200):
        assert actual <= remainder_bound(one, 1j * TWO_PI, 19, 1.0, r).bound_value


def test_remainder_bound_nonincreasing_in_order(one):
    for r in (TWO_PI * 1.2, 4 * math.pi, 30.0):
        values = [remainder_bound(one, 1j * TWO_PI, n, 1.0, r).bound_value for n in range(5, 41)]
        assert all(b <= a for a, b in zip(values, values[1:]))


def test_exact_terms_never_loosen_the_bound(one):
    for n in (5, 19, 30):
        for r in (7.0, 12.0, 20.0):
            plain = remainder_bound(one, 1j * TWO_PI, n, 1.0, r).bound_value
            hybrid = remainder_bound(one, 1j * TWO_PI, n, 1.0, r, exact_terms=64).bound_value
            assert hybrid <= plain


def test_polynomial_target_without_carrier_is_exact():
    target = AnalyticTarget.polynomial([1, 2, 3])
    assert remainder_bound(target, 0.0, 2, 1.0, 5.0).bound_value == 0.0
    assert remainder_bound(target, 0.0, 1, 1.0, 5.0).bound_value > 0.0


# -- select_order -------------------------------------------------------


def test_select_order_brackets_reference_configuration(one):
    n = select_order(one, 1j * TWO_PI, 1.0, 1e-2)
    assert n <= 19


def test_select_order_zero_for_constant_without_carrier(one):
    assert select_order(one, 0.0, 5.0, 1e-6) == 0


def test_select_order_matches_tail_sum(one):
    # the tail sum_{n>N} (2 pi)**n / n! is the exact sup of the remainder
    # majorant; the certificate must land on the same N
    def tail(N):
        return math.fsum(TWO_PI**n / math.factorial(n) for n in range(N + 1, N + 100))

    n_star = next(N for N in range(200) if tail(N) < 1e-6)
    assert select_order(one, 1j * TWO_PI, 1.0, 1e-6) == n_star


@pytest.mark.parametrize(
    "target, omega, a, eps",
    [
        (AnalyticTarget.constant(1.0), TWO_PI, 1.0, 1e-3),
        (AnalyticTarget.sinusoid(math.pi / 2), 3 * math.pi, 1.0, 1e-4),
        (AnalyticTarget.gaussian(1.0), TWO_PI, 1.5, 1e-5),
        (AnalyticTarget.complex_exponential(0.5j), 5.0, 0.7, 1e-6),
    ],
)
def test_selected_order_meets_budget_on_dense_grid(target, omega, a, eps):
    n = select_order(target, 1j * omega, a, eps)
    p = taylor_product(target, 1j * omega, n)
    t = np.linspace(-a, a, 20001)
    err = np.max(np.abs(target(t) * np.exp(-1j * omega * t) - p(t)))
    assert err < eps
    assert err <= best_remainder_bound(target, 1j * omega, n, a).bound_value


def test_select_order_capacity_error_carries_best(one):
    with pytest.raises(CapacityError) as info:
        select_order(one, 1j * TWO_PI, 1.0, 1e-12, n_max=10)
    assert info.value.best.bound_value > 1e-12


def test_select_order_respects_environment_cap(one, monkeypatch):
    monkeypatch.setenv("SUBOSC_NMAX", "5")
    with pytest.raises(CapacityError):
        select_order(one, 1j * TWO_PI, 1.0, 1e-6)
