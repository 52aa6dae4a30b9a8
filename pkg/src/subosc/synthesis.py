"""
Assembly of bandpass functions ``p(t) e(t) exp(i Omega t)``.

The approximation error on the interval splits by the triangle inequality
into a Taylor part (certified by :mod:`subosc.targets`) and a flatness
part ``|p(t)| |1 - e(t)|`` (certified by :func:`flatness_bound`).  A plan
fixes carrier, order, dilation and the two budgets, and records whether
the interval lasts at least one period of the lowest frequency while
staying well inside the flat top of the envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .envelope import Envelope
from .errors import CapacityError, DomainError, PlanError
from .targets import (
    AnalyticTarget,
    ComplexPolynomial,
    best_remainder_bound,
    select_order,
    taylor_product,
)

DEFAULT_FLATNESS_MARGIN = 0.1
DEFAULT_SPLIT = 0.5
MAX_DILATION_DOUBLINGS = 40
FLATNESS_SAMPLES = 2049

MODES = ("one_sided", "half_half", "conjugate")
_MODE_ALIASES = {
    "one-sided": "one_sided",
    "two-sided-half": "half_half",
    "two_sided_half": "half_half",
    "two-sided-conj": "conjugate",
    "two_sided_conj": "conjugate",
}


def normalize_mode(mode: str) -> str:
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        raise DomainError(f"unknown assembly mode {mode!r}")
    return mode


@dataclass(frozen=True)
class SynthesisPlan:
    carrier: float
    order: int
    dilation: float
    interval: tuple
    epsilon1: float
    epsilon2: float
    feasible: bool
    diagnostics: str = ""
    flatness_margin: float = DEFAULT_FLATNESS_MARGIN
    certified_epsilon1: Optional[float] = None
    certified_epsilon2: Optional[float] = None
    bandpass: bool = True

    @property
    def midpoint(self) -> float:
        a, b = self.interval
        return 0.5 * (a + b)

    @property
    def half_width(self) -> float:
        a, b = self.interval
        return 0.5 * (b - a)

    @property
    def omega_min(self) -> float:
        return self.carrier - math.pi / self.dilation

    @property
    def omega_max(self) -> float:
        return self.carrier + math.pi / self.dilation

    def to_dict(self) -> dict:
        return {
            "omega": self.carrier,
            "order": self.order,
            "dilation": self.dilation,
            "interval": list(self.interval),
            "eps1": self.epsilon1,
            "eps2": self.epsilon2,
            "feasible": self.feasible,
            "diagnostics": self.diagnostics,
            "flatness_margin": self.flatness_margin,
            "certified_eps1": self.certified_epsilon1,
            "certified_eps2": self.certified_epsilon2,
            "bandpass": self.bandpass,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SynthesisPlan":
        return cls(
            carrier=float(d["omega"]),
            order=int(d["order"]),
            dilation=float(d["dilation"]),
            interval=tuple(float(x) for x in d["interval"]),
            epsilon1=float(d["eps1"]),
            epsilon2=float(d["eps2"]),
            feasible=bool(d["feasible"]),
            diagnostics=d.get("diagnostics", ""),
            flatness_margin=float(d.get("flatness_margin", DEFAULT_FLATNESS_MARGIN)),
            certified_epsilon1=d.get("certified_eps1"),
            certified_epsilon2=d.get("certified_eps2"),
            bandpass=bool(d.get("bandpass", True)),
        )


def check_conditions(carrier, order, dilation, interval, flatness_margin=DEFAULT_FLATNESS_MARGIN,
                     bandpass=True):
    """Feasibility of ``pi / omega_min <= half_width <= margin * (N+1) * delta``.

    Returns ``(feasible, diagnostics)``.  Without ``bandpass`` only the
    flatness side is checked.
    """
    a, b = interval
    hw = 0.5 * (b - a)
    notes = []
    ok = True
    w_min = carrier - math.pi / dilation
    if bandpass:
        if w_min <= 0:
            return False, f"not bandpass: omega_min = {w_min:.6g} <= 0"
        floor = math.pi / w_min
        if hw < floor:
            ok = False
            notes.append(
                f"interval half-width {hw:.6g} is shorter than half a period of "
                f"omega_min ({floor:.6g})"
            )
    ceiling = flatness_margin * (order + 1) * dilation
    if hw > ceiling:
        ok = False
        notes.append(f"half-width {hw:.6g} exceeds flatness ceiling {ceiling:.6g}")
    if ok:
        notes.append("ok")
    return ok, "; ".join(notes)


def flatness_bound(poly: ComplexPolynomial, env: Envelope, interval) -> float:
    """Certificate for ``max |p(t)| |1 - e(t)|`` over the interval.

    Uses ``1 - sinc(x)**m <= m (1 - sinc(x)) <= m (pi x)**2 / 6`` for
    ``|x| <= 1``, i.e. ``(max |p|) pi**2 rho**2 / (6 m delta**2)`` with
    ``rho`` the largest distance from the envelope center.  ``max |p|`` is
    taken on a dense grid.
    """
    a, b = interval
    rho = max(abs(a - env.center), abs(b - env.center))
    if b == a and rho == 0:
        return 0.0
    t = np.linspace(a, b, FLATNESS_SAMPLES)
    pmax = float(np.max(np.abs(poly(t))))
    m, delta = env.power, env.dilation
    bound = pmax * math.pi**2 * rho**2 / (6 * m * delta**2)
    if rho / (m * delta) > 1:
        # sinc may go negative; |1 - e| <= 2 is all that is left
        bound = max(bound, 2 * pmax)
    return bound


def _validate_interval(interval):
    a, b = (float(x) for x in interval)
    if not b > a:
        raise DomainError(f"interval ({a}, {b}) is empty")
    return a, b


def make_plan(
    carrier: float,
    order: int,
    dilation: float,
    interval,
    target: Optional[AnalyticTarget] = None,
    epsilon1: Optional[float] = None,
    epsilon2: Optional[float] = None,
    flatness_margin: float = DEFAULT_FLATNESS_MARGIN,
    bandpass: bool = True,
) -> SynthesisPlan:
    """Plan from explicit parameters; certificates are filled in when a target is given."""
    a, b = _validate_interval(interval)
    if bandpass and carrier <= math.pi / dilation:
        raise DomainError(
            f"not bandpass: carrier {carrier:.6g} <= pi/delta = {math.pi / dilation:.6g}"
        )
    cert1 = cert2 = None
    if target is not None:
        mid, hw = 0.5 * (a + b), 0.5 * (b - a)
        tgt = target.at(mid)
        cert1 = best_remainder_bound(tgt, 1j * carrier, order, hw).bound_value
        poly = taylor_product(tgt, 1j * carrier, order)
        cert2 = flatness_bound(poly, Envelope(order + 1, dilation, mid), (a, b))
    ok, diag = check_conditions(carrier, order, dilation, (a, b), flatness_margin, bandpass)
    return SynthesisPlan(
        carrier=float(carrier),
        order=int(order),
        dilation=float(dilation),
        interval=(a, b),
        epsilon1=float(epsilon1 if epsilon1 is not None else (cert1 or 0.0)),
        epsilon2=float(epsilon2 if epsilon2 is not None else (cert2 or 0.0)),
        feasible=ok,
        diagnostics=diag,
        flatness_margin=flatness_margin,
        certified_epsilon1=cert1,
        certified_epsilon2=cert2,
        bandpass=bandpass,
    )


def plan_synthesis(
    target: AnalyticTarget,
    interval,
    epsilon: float,
    carrier: float,
    dilation: float,
    split: float = DEFAULT_SPLIT,
    flatness_margin: float = DEFAULT_FLATNESS_MARGIN,
    n_max: Optional[int] = None,
    bandpass: bool = True,
) -> SynthesisPlan:
    """Pick order and dilation so the certified error stays below ``epsilon``.

    ``epsilon1 = split * epsilon`` goes to the Taylor remainder and fixes the
    order; the dilation is then doubled from ``dilation`` until the
    flatness certificate is below ``epsilon2`` and the interval sits inside
    the flatness ceiling.  An interval shorter than one period of the
    lowest frequency gives an infeasible plan, not an error.

    Raises
    ------
    DomainError
        If the band would reach zero frequency in bandpass mode.
    CapacityError
        If the order or dilation caps are hit.
    """
    a, b = _validate_interval(interval)
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    if not 0 < split < 1:
        raise DomainError("split must lie in (0, 1)")
    if bandpass and carrier <= math.pi / dilation:
        raise DomainError(
            f"not bandpass: carrier {carrier:.6g} <= pi/delta = {math.pi / dilation:.6g}"
        )
    mid, hw = 0.5 * (a + b), 0.5 * (b - a)
    eps1 = split * epsilon
    eps2 = epsilon - eps1
    tgt = target.at(mid)
    rate = 1j * carrier
    order = select_order(tgt, rate, hw, eps1, n_max=n_max)
    cert1 = best_remainder_bound(tgt, rate, order, hw).bound_value
    poly = taylor_product(tgt, rate, order)

    delta = float(dilation)
    for _ in range(MAX_DILATION_DOUBLINGS):
        cert2 = flatness_bound(poly, Envelope(order + 1, delta, mid), (a, b))
        if cert2 < eps2 and hw <= flatness_margin * (order + 1) * delta:
            break
        delta *= 2
    else:
        raise CapacityError(
            f"flatness budget {eps2:g} not reached below dilation {delta:g}", best=cert2
        )
    ok, diag = check_conditions(carrier, order, delta, (a, b), flatness_margin, bandpass)
    return SynthesisPlan(
        carrier=float(carrier),
        order=order,
        dilation=delta,
        interval=(a, b),
        epsilon1=eps1,
        epsilon2=eps2,
        feasible=ok,
        diagnostics=diag,
        flatness_margin=flatness_margin,
        certified_epsilon1=cert1,
        certified_epsilon2=cert2,
        bandpass=bandpass,
    )


@dataclass(frozen=True)
class Part:
    """One modulated term ``p(t) e(t) exp(i carrier t)``."""

    poly: ComplexPolynomial
    envelope: Envelope
    carrier: float

    def baseband(self, t):
        return self.poly(t) * self.envelope(t)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.baseband(t) * np.exp(1j * self.carrier * t)


@dataclass(frozen=True)
class BandpassFunction:
    """Sum of up to two modulated parts, optionally in scaled time.

    ``f(t) = sum(part(time_scale * t))``.  When ``time_scale != 1`` the plan
    and the parts are expressed in the scaled time.
    """

    plan: SynthesisPlan
    plus_part: Optional[Part] = None
    minus_part: Optional[Part] = None
    time_scale: float = 1.0

    def __post_init__(self):
        if self.plus_part is None and self.minus_part is None:
            raise DomainError("a bandpass function needs at least one part")

    @property
    def parts(self):
        return [p for p in (self.plus_part, self.minus_part) if p is not None]

    def __call__(self, t):
        return evaluate(self, t)

    @property
    def bands(self):
        """Spectral support of each part, in the unscaled frequency."""
        out = []
        for p in self.parts:
            w = p.envelope.half_bandwidth
            out.append((self.time_scale * (p.carrier - w), self.time_scale * (p.carrier + w)))
        return out

    @property
    def band(self):
        """The nonnegative-center band, as used for classification."""
        return max(self.bands, key=lambda b: b[0] + b[1])

    @property
    def max_frequency(self) -> float:
        return max(max(abs(lo), abs(hi)) for lo, hi in self.bands)


def evaluate(f: BandpassFunction, t):
    t = np.asarray(t, dtype=float) * f.time_scale
    out = np.zeros(t.shape, dtype=complex)
    for part in f.parts:
        out = out + part(t)
    return out


def assemble(
    plan: SynthesisPlan,
    poly: Optional[ComplexPolynomial],
    env: Envelope,
    mode: str = "one_sided",
    target: Optional[AnalyticTarget] = None,
    force: bool = False,
) -> BandpassFunction:
    """Build the bandpass function for ``plan``.

    ``one_sided`` uses ``poly`` as is.  ``half_half`` needs ``target`` and
    builds separate polynomials for ``s/2 exp(-i Omega t)`` and
    ``s/2 exp(+i Omega t)``.  ``conjugate`` halves ``poly`` and mirrors it
    onto the negative carrier with conjugated coefficients, which makes
    ``f`` real for real ``s``.
    """
    mode = normalize_mode(mode)
    if not plan.feasible and not force:
        raise PlanError(f"plan is infeasible ({plan.diagnostics}); pass force=True to override")
    omega = plan.carrier
    if mode == "half_half":
        if target is None:
            raise DomainError("half_half assembly needs the target")
        tgt = target.at(plan.midpoint)
        plus = taylor_product(tgt, 1j * omega, plan.order).scaled(0.5)
        minus = taylor_product(tgt, -1j * omega, plan.order).scaled(0.5)
        return BandpassFunction(plan, Part(plus, env, omega), Part(minus, env, -omega))
    if poly is None:
        if target is None:
            raise DomainError("need a polynomial or a target")
        poly = taylor_product(target.at(plan.midpoint), 1j * omega, plan.order)
    if mode == "one_sided":
        return BandpassFunction(plan, Part(poly, env, omega))
    if target is not None and not target.is_real:
        raise DomainError("conjugate assembly needs a real-valued target")
    half = poly.scaled(0.5)
    return BandpassFunction(plan, Part(half, env, omega), Part(half.conjugate(), env, -omega))


def envelope_for(plan: SynthesisPlan) -> Envelope:
    return Envelope(plan.order + 1, plan.dilation, plan.midpoint)


def polynomial_for(plan: SynthesisPlan, target: AnalyticTarget) -> ComplexPolynomial:
    return taylor_product(target.at(plan.midpoint), 1j * plan.carrier, plan.order)


def synthesize(
    target: AnalyticTarget,
    plan: SynthesisPlan,
    mode: str = "one_sided",
    force: bool = False,
) -> BandpassFunction:
    """Polynomial, envelope and assembly for an existing plan."""
    return assemble(plan, polynomial_for(plan, target), envelope_for(plan), mode, target, force)


@dataclass(frozen=True)
class BandMapping:
    carrier: float
    dilation: float
    time_scale: float
    superoscillation: bool = False

    @property
    def scaled_carrier(self) -> float:
        """Carrier in the scaled time ``tau = time_scale * t``."""
        return self.carrier / self.time_scale

    def band_edges(self):
        half = math.pi / self.dilation
        s = self.time_scale
        return s * (self.scaled_carrier - half), s * (self.scaled_carrier + half)


def band_mapping(band, dilation: float = 1.0, superoscillation: bool = False) -> BandMapping:
    """Carrier and time scale that place a dilation-``delta`` construction on ``band``."""
    w1, w2 = (float(x) for x in band)
    if not w2 > w1:
        raise DomainError("band must satisfy w2 > w1")
    if not dilation > 0:
        raise DomainError("dilation must be positive")
    if not superoscillation and w1 * w2 <= 0:
        raise DomainError(
            f"band ({w1:g}, {w2:g}) reaches zero frequency; select superoscillation mode"
        )
    carrier = 0.5 * (w1 + w2)
    alpha = (w2 - w1) * dilation / (2 * math.pi)
    return BandMapping(carrier, float(dilation), alpha, superoscillation)


def synthesize_band(
    target: AnalyticTarget,
    interval,
    band,
    epsilon: float,
    dilation: float = 1.0,
    mode: str = "one_sided",
    superoscillation: bool = False,
    **plan_options,
) -> BandpassFunction:
    """Approximate ``target`` on ``interval`` with spectrum inside ``band``.

    The construction runs in the scaled time ``tau = alpha t`` where the
    band has width ``2 pi / delta``; the result evaluates in ``t``.  Plan
    growth of the dilation only narrows the band.
    """
    mapping = band_mapping(band, dilation, superoscillation)
    alpha = mapping.time_scale
    a, b = _validate_interval(interval)
    scaled_target = target.time_scaled(alpha)
    plan = plan_synthesis(
        scaled_target,
        (alpha * a, alpha * b),
        epsilon,
        mapping.scaled_carrier,
        dilation,
        bandpass=not superoscillation,
        **plan_options,
    )
    f = synthesize(scaled_target, plan, mode)
    return replace(f, time_scale=alpha)
