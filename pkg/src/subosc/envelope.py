"""
Sinc-power envelopes and their cardinal B-spline spectra.

The envelope ``e(t) = sinc(t / (m delta))**m`` with ``sinc(x) = sin(pi x)/(pi x)``
is bandlimited to ``[-pi/delta, pi/delta]``.  Under the transform convention
``F(w) = integral f(t) exp(-i w t) dt`` its spectrum is the m-fold
convolution (scaled by ``(2 pi)**(1-m)``) of a rectangle of height
``m delta`` on ``[-pi/(m delta), pi/(m delta)]``: a centered cardinal
B-spline of order m with integral ``2 pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .piecewise import PiecewisePolynomial

SINC_SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True)
class Envelope:
    """``e(t) = sinc((t - center) / (power * dilation)) ** power``."""

    power: int
    dilation: float = 1.0
    center: float = 0.0

    def __post_init__(self):
        if int(self.power) != self.power or self.power < 1:
            raise DomainError("envelope power must be a positive integer")
        if not self.dilation > 0:
            raise DomainError("dilation must be positive")
        object.__setattr__(self, "power", int(self.power))
        object.__setattr__(self, "dilation", float(self.dilation))

    @property
    def half_bandwidth(self) -> float:
        return math.pi / self.dilation

    def __call__(self, t):
        return eval_envelope(self, t)

    def to_dict(self) -> dict:
        return {"power": self.power, "dilation": self.dilation, "center": self.center}


def sinc(x):
    """Normalized sinc with an even series below ``SINC_SERIES_THRESHOLD``."""
    x = np.asarray(x, dtype=float)
    px = np.pi * x
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(px) / px
    p2 = np.where(small, px, 0.0) ** 2
    series = 1.0 - p2 / 6.0 + p2 * p2 / 120.0
    return np.where(small, series, direct)


def eval_envelope(env: Envelope, t):
    x = (np.asarray(t, dtype=float) - env.center) / (env.power * env.dilation)
    with np.errstate(under="ignore"):
        out = sinc(x) ** env.power
    return out if out.ndim else float(out)


@lru_cache(maxsize=None)
def cardinal_bspline_pieces(m: int):
    """Exact pieces of the unit cardinal B-spline ``M_m`` on knots ``0..m``.

    Piece ``j`` holds ascending rational coefficients in ``v = x - j``.
    ``M_1`` is the indicator of ``[0, 1]`` and
    ``M_{k+1}(x) = integral_{x-1}^{x} M_k``; on piece ``j`` that moving
    integral is ``area_{j-1} - P_{j-1}(v) + P_j(v)`` with ``P_i`` the
    antiderivative of piece ``i`` vanishing at ``v = 0``.
    """
    if m < 1:
        raise DomainError("B-spline order must be at least 1")
    pieces = [[Fraction(1)]]
    for k in range(1, m):
        anti = [[Fraction(0)] + [c / (i + 1) for i, c in enumerate(p)] for p in pieces]
        areas = [sum(a) for a in anti]
        zero = [Fraction(0)] * (k + 1)
        new = []
        for j in range(k + 1):
            cur = anti[j] if j < k else zero
            prev = anti[j - 1] if j >= 1 else zero
            area_prev = areas[j - 1] if j >= 1 else Fraction(0)
            coeffs = [c - p for c, p in zip(cur, prev)]
            coeffs[0] += area_prev
            new.append(coeffs)
        pieces = new
    return tuple(tuple(p) for p in pieces)


class BSplineSpectrum(PiecewisePolynomial):
    """Exact spectrum ``E(w)`` of a sinc-power envelope (or a derivative of it).

    Knots are ``-pi/delta + j * 2 pi / (m delta)`` for ``j = 0..m``;
    coefficients are in ``u = w - knots[j]``.
    """

    def __init__(self, knots, coefficients, power, dilation, derivative_order=0):
        super().__init__(knots, coefficients)
        self.power = power
        self.dilation = dilation
        self.derivative_order = derivative_order

    @property
    def discontinuities(self):
        return self.jumps()

    def to_dict(self) -> dict:
        d = super().to_dict()
        return {"power": self.power, "dilation": self.dilation, **d}


def envelope_spectrum(env: Envelope) -> BSplineSpectrum:
    m, delta = env.power, env.dilation
    h = 2 * math.pi / (m * delta)
    # integer multiples of one float keep the knots exactly antisymmetric
    knots = (2 * np.arange(m + 1) - m) * (math.pi / (m * delta))
    # E(w) = (2 pi / h) M_m((w - w0) / h), so u**k picks up h**-(k+1)
    scale = 2 * math.pi / h
    hk = h ** -np.arange(m, dtype=float)
    coeffs = np.array(
        [[float(c) for c in piece] for piece in cardinal_bspline_pieces(m)]
    ) * (scale * hk)
    return BSplineSpectrum(knots, coeffs, m, delta)


def spectrum_derivative(spec: BSplineSpectrum, order: int) -> BSplineSpectrum:
    """k-th derivative of the spectrum, on the same knots.

    For ``order == power - 1`` the pieces are constants with jumps at the
    knots (see ``.discontinuities``).
    """
    if order < 0:
        raise DomainError("derivative order must be nonnegative")
    if order >= spec.power:
        raise DomainError(
            f"derivative of order {order} of a degree-{spec.power - 1} B-spline "
            "exists only distributionally"
        )
    d = PiecewisePolynomial.derivative(spec, order)
    return BSplineSpectrum(d.knots, d.coefficients, spec.power, spec.dilation, order)
