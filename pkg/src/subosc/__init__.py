"""Bandpass and bandlimited functions that track an analytic target on an interval."""

from .envelope import BSplineSpectrum, Envelope, envelope_spectrum, eval_envelope, spectrum_derivative
from .errors import CapacityError, DomainError, NumericError, PlanError, SuboscError, SynthesisError
from .spectral import (
    PiecewiseSpectrum,
    analytic_spectrum,
    band_support_check,
    numerical_transform,
    spectrum_of,
)
from .synthesis import (
    BandMapping,
    BandpassFunction,
    SynthesisPlan,
    assemble,
    band_mapping,
    evaluate,
    flatness_bound,
    make_plan,
    plan_synthesis,
    synthesize,
    synthesize_band,
)
from .targets import (
    AnalyticTarget,
    ComplexPolynomial,
    RemainderBound,
    remainder_bound,
    select_order,
    taylor_product,
)
from .verify import VerificationReport, classify, measure_dynamic_range, measure_error, periods_check, verify

__version__ = "0.1.0"

__all__ = [
    "BSplineSpectrum",
    "Envelope",
    "envelope_spectrum",
    "eval_envelope",
    "spectrum_derivative",
    "CapacityError",
    "DomainError",
    "NumericError",
    "PlanError",
    "SuboscError",
    "SynthesisError",
    "PiecewiseSpectrum",
    "analytic_spectrum",
    "band_support_check",
    "numerical_transform",
    "spectrum_of",
    "BandMapping",
    "BandpassFunction",
    "SynthesisPlan",
    "assemble",
    "band_mapping",
    "evaluate",
    "flatness_bound",
    "make_plan",
    "plan_synthesis",
    "synthesize",
    "synthesize_band",
    "AnalyticTarget",
    "ComplexPolynomial",
    "RemainderBound",
    "remainder_bound",
    "select_order",
    "taylor_product",
    "VerificationReport",
    "classify",
    "measure_dynamic_range",
    "measure_error",
    "periods_check",
    "verify",
]
