import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subosc.envelope import Envelope, eval_envelope
from subosc.errors import DomainError, PlanError
from subosc.spectral import band_support_check, spectrum_of
from subosc.synthesis import (
    SynthesisPlan,
    assemble,
    band_mapping,
    check_conditions,
    envelope_for,
    flatness_bound,
    make_plan,
    plan_synthesis,
    polynomial_for,
    synthesize,
    synthesize_band,
)
from subosc.targets import AnalyticTarget, ComplexPolynomial, taylor_product
from subosc.verify import measure_error, periods_check

TWO_PI = 2 * math.pi


def reference_waveform(t):
    """Truncated series times sinc**20(t/80) times the carrier, written out directly."""
    t = np.asarray(t, dtype=float)
    series = sum((-1j * TWO_PI * t) ** n / math.factorial(n) for n in range(20))
    x = t / 80
    with np.errstate(invalid="ignore", divide="ignore"):
        sinc = np.where(x == 0, 1.0, np.sin(np.pi * x) / (np.pi * x))
    return series * sinc**20 * np.exp(1j * TWO_PI * t)


# -- plans --------------------------------------------------------------


def test_reference_parameters_pass_plan_check(fig1_plan):
    assert fig1_plan.feasible
    assert (fig1_plan.order, fig1_plan.dilation, fig1_plan.carrier) == (19, 4.0, TWO_PI)
    assert fig1_plan.omega_min == pytest.approx(7 * math.pi / 4)
    assert fig1_plan.omega_max == pytest.approx(9 * math.pi / 4)
    assert periods_check(fig1_plan.interval, fig1_plan.omega_min) >= 1


def test_reference_certificates(fig1_plan):
    assert fig1_plan.certified_epsilon2 == pytest.approx(0.0052, rel=0.02)
    assert fig1_plan.certified_epsilon1 < 1e-2


def test_planner_meets_budget(one):
    plan = plan_synthesis(one, (-1, 1), 1e-2, TWO_PI, 4.0)
    assert plan.feasible
    assert plan.order >= 19 and plan.dilation >= 4.0
    assert plan.certified_epsilon1 < plan.epsilon1
    assert plan.certified_epsilon2 < plan.epsilon2
    f = synthesize(one, plan)
    assert measure_error(f, one, (-1, 1)).sup_error < 1e-2


def test_tight_budget_grows_order(one):
    plan = plan_synthesis(one, (-1, 1), 1e-4, TWO_PI, 4.0)
    assert plan.feasible and plan.order >= 19
    f = synthesize(one, plan)
    assert measure_error(f, one, (-1, 1)).sup_error < 1e-4


@pytest.mark.parametrize("builder", ["plan", "make"])
def test_low_carrier_is_not_bandpass(one, builder):
    with pytest.raises(DomainError, match="not bandpass"):
        if builder == "plan":
            plan_synthesis(one, (-1, 1), 1e-2, math.pi / 8, 4.0)
        else:
            make_plan(math.pi / 8, 19, 4.0, (-1, 1), one)


def test_short_interval_flagged_infeasible():
    ok, diag = check_conditions(TWO_PI, 19, 4.0, (-0.2, 0.2))
    assert not ok and "half a period" in diag


def test_flatness_ceiling_flagged():
    ok, diag = check_conditions(TWO_PI, 3, 1.0, (-1, 1))
    assert not ok and "ceiling" in diag


def test_plan_round_trip(fig1_plan):
    assert SynthesisPlan.from_dict(fig1_plan.to_dict()) == fig1_plan


# -- flatness_bound -----------------------------------------------------


def test_flatness_bound_dominates_measurement(fig1_plan, one):
    poly = polynomial_for(fig1_plan, one)
    env = envelope_for(fig1_plan)
    bound = flatness_bound(poly, env, (-1, 1))
    t = np.linspace(-1, 1, 40001)
    measured = np.max(np.abs(poly(t) * (1 - eval_envelope(env, t))))
    assert bound == pytest.approx(0.0052, rel=0.02)
    assert measured <= bound


def test_flatness_bound_degenerate_interval():
    env = Envelope(5, 2.0, center=0.4)
    assert flatness_bound(ComplexPolynomial([3.0, 1j]), env, (0.4, 0.4)) == 0.0


def test_flatness_bound_single_sinc():
    env = Envelope(1, 1.0)
    bound = flatness_bound(ComplexPolynomial([1.0]), env, (-0.1, 0.1))
    t = np.linspace(-0.1, 0.1, 10001)
    assert bound >= np.max(np.abs(1 - np.sinc(t)))


# -- assembly and evaluation --------------------------------------------


def test_one_sided_matches_written_out_formula(fig1):
    t = np.linspace(-3, 3, 601)
    np.testing.assert_allclose(fig1(t), reference_waveform(t), rtol=1e-12, atol=1e-13)


def test_evaluation_examples(fig1):
    assert fig1(0.0) == 1.0
    assert abs(fig1(80.0)) < 1e-12
    assert abs(fig1(0.5) - 1) < 1e-2


def test_conjugate_split_is_real(one, fig1_plan):
    f = synthesize(one, fig1_plan, "conjugate")
    t = np.linspace(-5, 5, 1000)
    assert np.max(np.abs(f(t).imag)) < 1e-12
    assert measure_error(f, one, (-1, 1)).sup_error < 1e-2


def test_half_half_split(one, fig1_plan):
    f = synthesize(one, fig1_plan, "two-sided-half")
    eps = fig1_plan.certified_epsilon1 + fig1_plan.certified_epsilon2
    assert abs(f(0.0) - 1) < eps
    one_sided = measure_error(synthesize(one, fig1_plan), one, (-1, 1)).sup_error
    two_sided = measure_error(f, one, (-1, 1)).sup_error
    assert abs(one_sided - two_sided) < eps


def test_conjugate_rejects_complex_target(fig1_plan):
    target = AnalyticTarget.complex_exponential(0.5j)
    with pytest.raises(DomainError):
        synthesize(target, fig1_plan, "conjugate")


def test_infeasible_plan_needs_override(one):
    plan = make_plan(TWO_PI, 19, 4.0, (-0.2, 0.2), one)
    assert not plan.feasible
    with pytest.raises(PlanError):
        synthesize(one, plan)
    f = synthesize(one, plan, force=True)
    assert f(0.0) == 1.0


def test_modulation_identity(fig1):
    part = fig1.plus_part
    t = np.linspace(-400, 400, 5001)
    np.testing.assert_allclose(np.abs(part(t)), np.abs(part.poly(t) * part.envelope(t)), rtol=1e-13)


def test_parts_and_bands(one, fig1_plan):
    f = synthesize(one, fig1_plan, "conjugate")
    assert len(f.parts) == 2
    lo, hi = f.band
    assert lo == pytest.approx(7 * math.pi / 4) and hi == pytest.approx(9 * math.pi / 4)
    assert f.max_frequency == pytest.approx(9 * math.pi / 4)


def random_plans(n):
    rng = np.random.default_rng(11)
    kinds = [
        lambda: AnalyticTarget.constant(rng.uniform(-2, 2)),
        lambda: AnalyticTarget.sinusoid(rng.uniform(0.2, 2)),
        lambda: AnalyticTarget.gaussian(rng.uniform(0.8, 3)),
        lambda: AnalyticTarget.complex_exponential(1j * rng.uniform(-1, 1)),
    ]
    out = []
    i = 0
    while len(out) < n:
        target = kinds[i % len(kinds)]()
        i += 1
        a = rng.uniform(-1, 0)
        b = a + rng.uniform(1.2, 2.5)
        omega = rng.uniform(4, 9)
        eps = 10 ** rng.uniform(-5, -2)
        plan = plan_synthesis(target, (a, b), eps, omega, 2.0)
        if plan.feasible:
            out.append((target, (a, b), plan))
    return out


@pytest.mark.parametrize("target, interval, plan", random_plans(10))
def test_triangle_budget(target, interval, plan):
    f = synthesize(target, plan)
    part = f.plus_part
    t = np.linspace(*interval, 20001)
    g = target(t) * np.exp(-1j * plan.carrier * t)
    eps1 = np.max(np.abs(g - part.poly(t)))
    eps2 = np.max(np.abs(part.poly(t) * (1 - part.envelope(t))))
    total = np.max(np.abs(f(t) - target(t)))
    assert total <= eps1 + eps2 + 1e-12
    assert eps1 <= plan.certified_epsilon1
    assert eps2 <= plan.certified_epsilon2


# -- band mapping -------------------------------------------------------


def test_reference_band_round_trips():
    m = band_mapping((7 * math.pi / 4, 9 * math.pi / 4), 4.0)
    assert m.carrier == pytest.approx(TWO_PI, rel=1e-15)
    assert m.time_scale == pytest.approx(1.0, rel=1e-15)


def test_zero_centered_band_in_superoscillation_mode():
    m = band_mapping((-math.pi, math.pi), 1.0, superoscillation=True)
    assert m.carrier == 0.0
    with pytest.raises(DomainError):
        band_mapping((-math.pi, math.pi), 1.0)


def test_general_band_support():
    m = band_mapping((3.0, 5.0), 1.0)
    assert m.carrier == 4.0
    assert m.time_scale == pytest.approx(1 / math.pi, rel=1e-15)
    target = AnalyticTarget.constant(1.0)
    f = synthesize_band(target, (-4, 4), (3.0, 5.0), 1e-2, dilation=1.0)
    lo, hi = f.band
    assert 3.0 - 1e-12 <= lo and hi <= 5.0 + 1e-12
    assert band_support_check(spectrum_of(f), (3.0, 5.0)).ok
    assert measure_error(f, target, (-4, 4)).sup_error < 1e-2


def test_superoscillatory_band_synthesis():
    target = AnalyticTarget.sinusoid(5 * math.pi)
    f = synthesize_band(target, (-0.1, 0.1), (-math.pi, math.pi), 1e-3, superoscillation=True)
    assert f.max_frequency <= math.pi + 1e-12
    assert measure_error(f, target, (-0.1, 0.1)).sup_error < 1e-3


@settings(max_examples=60, deadline=None)
@given(
    w1=st.floats(0.1, 50),
    width=st.floats(0.05, 20),
    delta=st.floats(1, 16),
)
def test_band_mapping_round_trip(w1, width, delta):
    w2 = w1 + width
    lo, hi = band_mapping((w1, w2), delta).band_edges()
    assert lo == pytest.approx(w1, rel=1e-12)
    assert hi == pytest.approx(w2, rel=1e-12)
    neg = band_mapping((-w2, -w1), delta).band_edges()
    assert neg == pytest.approx((-w2, -w1), rel=1e-12)


def test_assemble_accepts_explicit_pieces(fig1_plan, one):
    poly = taylor_product(one, 1j * TWO_PI, 19)
    f = assemble(fig1_plan, poly, Envelope(20, 4.0), "one-sided")
    assert f.minus_part is None
    assert f(0.25) == pytest.approx(reference_waveform(0.25), rel=1e-13)
