"""
Exact spectra of assembled functions and a quadrature cross-check.

Multiplying by ``t**n`` maps to ``i**n d^n/dw^n`` under
``F(w) = integral f(t) exp(-i w t) dt``, so the spectrum of
``p(t) e(t - c)`` is ``exp(-i w c) sum d_n i**n E^(n)(w)`` with ``d_n`` the
coefficients of ``p`` about ``c``.  Every term lives on the knots of the
envelope spectrum, so support and discontinuities are read off exactly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .envelope import Envelope, envelope_spectrum
from .errors import DomainError, NumericError
from .piecewise import JUMP_THRESHOLD, PiecewisePolynomial
from .synthesis import BandpassFunction
from .targets import ComplexPolynomial

log = logging.getLogger(__name__)

NYQUIST_FACTOR = 4.0
CHUNK = 1 << 15


class PiecewiseSpectrum:
    """``F(w) = pieces(w) * exp(-i (w - band_shift) * time_shift)``.

    ``pieces`` is a complex piecewise polynomial on absolute frequencies;
    the phase factor accounts for an envelope centered at ``time_shift``
    and has unit modulus, so support and jump magnitudes are those of the
    pieces.
    """

    def __init__(self, pieces: PiecewisePolynomial, band_shift=0.0, time_shift=0.0,
                 discontinuities=None):
        self.pieces = pieces
        self.band_shift = float(band_shift)
        self.time_shift = float(time_shift)
        if discontinuities is None:
            discontinuities = pieces.jumps(JUMP_THRESHOLD)
        self.discontinuities = discontinuities

    @property
    def knots(self):
        return self.pieces.knots

    @property
    def coefficients(self):
        return self.pieces.coefficients

    @property
    def support(self):
        return self.pieces.support

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        vals = self.pieces(omega)
        if self.time_shift:
            vals = vals * np.exp(-1j * (omega - self.band_shift) * self.time_shift)
        return vals

    def peak(self) -> float:
        return self.pieces.peak()

    def energy(self) -> float:
        """``(1/2pi) integral |F|**2``, the time-domain energy by Parseval."""
        return self.pieces.abs2_integral() / (2 * math.pi)

    def time_scaled(self, alpha: float) -> "PiecewiseSpectrum":
        """Spectrum of ``f(alpha t)`` given this is the spectrum of ``f``."""
        return PiecewiseSpectrum(
            self.pieces.dilated(alpha),
            self.band_shift * alpha,
            self.time_shift / alpha,
            [(x * alpha, j / alpha) for x, j in self.discontinuities],
        )

    def to_dict(self) -> dict:
        return {
            "band_shift": self.band_shift,
            "time_shift": self.time_shift,
            "knots": [float(x) for x in self.knots],
            "discontinuities": [{"omega": x, "jump": j} for x, j in self.discontinuities],
        }


def analytic_spectrum(poly: ComplexPolynomial, env: Envelope, carrier: float = 0.0) -> PiecewiseSpectrum:
    """Exact spectrum of ``poly(t) * env(t) * exp(i carrier t)``."""
    m = env.power
    if poly.degree > m - 1:
        raise DomainError(
            f"polynomial degree {poly.degree} needs envelope derivatives up to that "
            f"order, but the envelope spectrum is only piecewise of degree {m - 1}"
        )
    d = poly.recentered(env.center).coefficients
    base = envelope_spectrum(env)
    total = np.zeros(base.coefficients.shape, dtype=complex)
    for n, dn in enumerate(d):
        if dn == 0:
            continue
        deriv = base.derivative(n).coefficients
        total[:, : deriv.shape[1]] += (dn * 1j**n) * deriv
    pp = PiecewisePolynomial(base.knots + carrier, total)
    return PiecewiseSpectrum(pp, carrier, env.center)


def spectrum_of(f: BandpassFunction):
    """One :class:`PiecewiseSpectrum` per part of ``f``, in unscaled frequency."""
    out = []
    for part in f.parts:
        spec = analytic_spectrum(part.poly, part.envelope, part.carrier)
        if f.time_scale != 1.0:
            spec = spec.time_scaled(f.time_scale)
        out.append(spec)
    return out


def evaluate_spectra(specs: Sequence[PiecewiseSpectrum], omega):
    omega = np.asarray(omega, dtype=float)
    out = np.zeros(omega.shape, dtype=complex)
    for s in specs:
        out = out + s(omega)
    return out


def numerical_transform(f, omega, window_half_width: float, samples_per_unit: float,
                        check: bool = False):
    """Midpoint-rule estimate of ``integral_{-T}^{T} f(t) exp(-i w t) dt``.

    The truncation error is ``O(1/T)`` because ``p(t) e(t)`` decays only
    like ``1/|t|``; it concentrates near the spectral knots.  With
    ``check=True`` the estimate is repeated at half the step and
    ``(values, max relative change)`` is returned.
    """
    T = float(window_half_width)
    if not T > 0:
        raise DomainError("window half-width must be positive")
    need = NYQUIST_FACTOR * f.max_frequency / math.pi
    if samples_per_unit < need:
        raise DomainError(
            f"{samples_per_unit:g} samples per unit time is below {NYQUIST_FACTOR:g}x "
            f"Nyquist ({need:g})"
        )
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    values = _midpoint(f, omega, T, int(math.ceil(2 * T * samples_per_unit)))
    if not check:
        return values
    finer = _midpoint(f, omega, T, 2 * int(math.ceil(2 * T * samples_per_unit)))
    scale = max(float(np.max(np.abs(finer))), np.finfo(float).tiny)
    change = float(np.max(np.abs(finer - values))) / scale
    log.debug("step-halving relative change %.3e", change)
    return finer, change


def _midpoint(f, omega, T, n):
    dt = 2 * T / n
    out = np.zeros(omega.shape, dtype=complex)
    for start in range(0, n, CHUNK):
        k = np.arange(start, min(start + CHUNK, n))
        t = -T + (k + 0.5) * dt
        ft = f(t)
        if not np.all(np.isfinite(ft)):
            raise NumericError("non-finite samples in the quadrature window")
        out += np.exp(-1j * np.outer(omega, t)) @ ft
    return out * dt


@dataclass
class SupportReport:
    ok: bool
    offending: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def band_support_check(spec, claimed_band) -> SupportReport:
    """Exact check that every nonzero piece lies inside the claimed band(s).

    ``spec`` is a spectrum or a list of spectra; ``claimed_band`` is a pair
    ``(lo, hi)`` or a list of pairs.  Offending knot intervals are reported.
    """
    specs = spec if isinstance(spec, (list, tuple)) else [spec]
    if len(claimed_band) == 2 and np.isscalar(claimed_band[0]):
        bands = [tuple(claimed_band)]
    else:
        bands = [tuple(b) for b in claimed_band]
    offending = []
    for s in specs:
        knots = s.knots
        for j in range(knots.size - 1):
            if s.pieces.is_zero_piece(j):
                continue
            lo, hi = float(knots[j]), float(knots[j + 1])
            if not any(_inside(lo, hi, b) for b in bands):
                offending.append((lo, hi))
    return SupportReport(not offending, offending)


def _inside(lo, hi, band):
    blo, bhi = band
    tol = 1e-12 * max(1.0, abs(blo), abs(bhi))
    return lo >= blo - tol and hi <= bhi + tol
