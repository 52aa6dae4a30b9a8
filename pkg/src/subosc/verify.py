"""Measurements on assembled functions: error, extent, dynamic range, class."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MIN_GRID_DENSITY = 50

SUPEROSCILLATORY = "superoscillatory"
SUBOSCILLATORY = "suboscillatory"
NEITHER = "neither"


@dataclass(frozen=True)
class ErrorMeasurement:
    sup_error: float
    spacing: float
    argmax: float
    samples: int


def sample_grid(f, interval, grid_density=MIN_GRID_DENSITY):
    """Grid with at least ``grid_density`` samples per period of the top frequency."""
    a, b = (float(x) for x in interval)
    if not b > a:
        raise DomainError(f"interval ({a}, {b}) is empty")
    if grid_density < MIN_GRID_DENSITY:
        raise DomainError(f"grid density must be at least {MIN_GRID_DENSITY} per period")
    period = 2 * math.pi / f.max_frequency
    n = int(math.ceil((b - a) * grid_density / period)) + 1
    return np.linspace(a, b, max(n, 2))


def measure_error(f, target, interval, grid_density=MIN_GRID_DENSITY) -> ErrorMeasurement:
    t = sample_grid(f, interval, grid_density)
    err = np.abs(f(t) - target(t))
    i = int(np.argmax(err))
    return ErrorMeasurement(float(err[i]), float(t[1] - t[0]), float(t[i]), t.size)


def _window(window):
    if np.isscalar(window):
        w = float(window)
        return -w, w
    lo, hi = window
    return float(lo), float(hi)


def measure_dynamic_range(f, interval, window, grid_density=MIN_GRID_DENSITY) -> float:
    """``log10(max |Re f| over window / max |Re f| over interval)``.

    ``window`` is a pair or a half-width ``W`` meaning ``(-W, W)``.
    """
    a, b = (float(x) for x in interval)
    lo, hi = _window(window)
    if lo > a or hi < b:
        raise DomainError(f"survey window ({lo}, {hi}) does not contain ({a}, {b})")
    tw = sample_grid(f, (lo, hi), grid_density)
    vw = np.abs(f(tw).real)
    # window samples that land inside the interval count as interval samples
    inside = (tw >= a) & (tw <= b)
    inner = max(np.max(np.abs(f(sample_grid(f, (a, b), grid_density)).real)),
                np.max(vw[inside], initial=0.0))
    if inner == 0:
        raise DomainError("function vanishes on the interval; dynamic range undefined")
    outer = np.max(vw)
    return float(math.log10(max(outer, inner) / inner))


def classify(band, local_frequency: float) -> str:
    w1, w2 = (float(x) for x in band)
    if not w2 > w1:
        raise DomainError("band must satisfy w2 > w1")
    wl = abs(local_frequency)
    if w1 * w2 < 0 and wl > max(abs(w1), w2):
        return SUPEROSCILLATORY
    if w1 * w2 > 0 and wl < min(abs(w1), abs(w2)):
        return SUBOSCILLATORY
    return NEITHER


def periods_check(interval, omega_min: float) -> float:
    """Interval length in periods of ``omega_min``."""
    if not omega_min > 0:
        raise DomainError("omega_min must be positive")
    a, b = interval
    return (b - a) * omega_min / (2 * math.pi)


@dataclass
class VerificationReport:
    sup_error: float
    periods_of_min_frequency: float
    dynamic_range_orders: float
    classification: str
    grid_density: float
    spacing: float
    window: tuple
    band: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "sup_error": self.sup_error,
            "periods": self.periods_of_min_frequency,
            "dynamic_range_orders": self.dynamic_range_orders,
            "classification": self.classification,
            "grid": {"density": self.grid_density, "spacing": self.spacing},
            "window": list(self.window),
            "band": list(self.band),
        }


def verify(f, target, interval, window, grid_density=MIN_GRID_DENSITY) -> VerificationReport:
    err = measure_error(f, target, interval, grid_density)
    band = f.band
    periods = periods_check(interval, band[0]) if band[0] > 0 else 0.0
    return VerificationReport(
        sup_error=err.sup_error,
        periods_of_min_frequency=periods,
        dynamic_range_orders=measure_dynamic_range(f, interval, window, grid_density),
        classification=classify(band, target.local_frequency),
        grid_density=grid_density,
        spacing=err.spacing,
        window=_window(window),
        band=tuple(band),
    )
