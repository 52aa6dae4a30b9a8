"""
Analytic targets, Taylor polynomials and certified remainder bounds.

A target ``s(t)`` is an entire function described by one of a few closed
forms.  Each form knows its Taylor coefficients about an expansion point
``t0`` and a closed-form growth bound on circles ``|z - t0| = R``.  The
polynomial ``p_N`` approximating ``g(t) = s(t) exp(-k t)`` (``k`` is the
carrier rate, ``i*Omega`` for a bandpass carrier) is the truncated Cauchy
product of the two series, and Cauchy's estimate on the coefficients of
``g`` bounds the truncation remainder.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import CapacityError, DomainError, SynthesisError

KINDS = ("constant", "complex_exponential", "sinusoid", "polynomial", "gaussian")

DEFAULT_NMAX = 200
DEFAULT_EXACT_TERMS = 64
RADIUS_GRID_POINTS = 64
RATIO_FLOOR = 1.05
RATIO_CEIL = 20.0


def _complex_to_json(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def _complex_from_json(v):
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(re, im)
    return complex(v)


@dataclass(frozen=True)
class AnalyticTarget:
    """An entire target function ``s(t)``.

    Only the fields belonging to ``kind`` are meaningful:

    ========================  =============================================
    kind                      s(t)
    ========================  =============================================
    ``constant``              ``value``
    ``complex_exponential``   ``exp(rate * t)``
    ``sinusoid``              ``sin(frequency * t)``
    ``polynomial``            ``sum(coefficients[k] * t**k)``
    ``gaussian``              ``exp(-(t / width)**2)``
    ========================  =============================================

    Use the classmethod constructors rather than filling fields by hand.
    """

    kind: str
    value: complex = 1.0
    rate: complex = 0.0
    frequency: float = 0.0
    coefficients: tuple = ()
    width: float = 1.0
    expansion_point: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown target kind {self.kind!r}")
        if self.kind == "gaussian" and not self.width > 0:
            raise DomainError("gaussian width must be positive")
        if self.kind == "polynomial":
            if len(self.coefficients) == 0:
                raise DomainError("polynomial target needs at least one coefficient")
            object.__setattr__(
                self, "coefficients", tuple(complex(c) for c in self.coefficients)
            )

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value=1.0, expansion_point=0.0):
        return cls("constant", value=complex(value), expansion_point=expansion_point)

    @classmethod
    def complex_exponential(cls, rate, expansion_point=0.0):
        return cls("complex_exponential", rate=complex(rate), expansion_point=expansion_point)

    @classmethod
    def sinusoid(cls, frequency, expansion_point=0.0):
        return cls("sinusoid", frequency=float(frequency), expansion_point=expansion_point)

    @classmethod
    def polynomial(cls, coefficients, expansion_point=0.0):
        return cls("polynomial", coefficients=tuple(coefficients), expansion_point=expansion_point)

    @classmethod
    def gaussian(cls, width, expansion_point=0.0):
        return cls("gaussian", width=float(width), expansion_point=expansion_point)

    # -- metadata -------------------------------------------------------

    def at(self, expansion_point: float) -> "AnalyticTarget":
        """Same function, Taylor coefficients generated about another point."""
        return replace(self, expansion_point=float(expansion_point))

    @property
    def local_frequency(self) -> float:
        """Declared oscillation rate of the target on any interval."""
        if self.kind == "sinusoid":
            return abs(self.frequency)
        if self.kind == "complex_exponential":
            return abs(complex(self.rate).imag)
        return 0.0

    @property
    def rate_scale(self) -> float:
        """Intrinsic rate (1/time) used to scale contour radii."""
        if self.kind == "complex_exponential":
            return abs(self.rate)
        if self.kind == "sinusoid":
            return abs(self.frequency)
        if self.kind == "gaussian":
            return 1.0 / self.width
        return 0.0

    @property
    def exact_degree(self) -> Optional[int]:
        """Degree if ``s`` is itself a polynomial, else None."""
        if self.kind == "constant":
            return 0
        if self.kind == "polynomial":
            return len(self.coefficients) - 1
        return None

    @property
    def is_real(self) -> bool:
        """True if ``s`` takes real values on the real axis."""
        if self.kind == "constant":
            return complex(self.value).imag == 0
        if self.kind == "complex_exponential":
            return complex(self.rate).imag == 0
        if self.kind == "polynomial":
            return all(c.imag == 0 for c in self.coefficients)
        return True

    def time_scaled(self, alpha: float) -> "AnalyticTarget":
        """Target ``u(tau) = s(tau / alpha)`` of the scaled time ``tau = alpha * t``."""
        if not alpha > 0:
            raise DomainError("time scale must be positive")
        t0 = self.expansion_point * alpha
        if self.kind == "complex_exponential":
            return replace(self, rate=self.rate / alpha, expansion_point=t0)
        if self.kind == "sinusoid":
            return replace(self, frequency=self.frequency / alpha, expansion_point=t0)
        if self.kind == "polynomial":
            cs = tuple(c / alpha**k for k, c in enumerate(self.coefficients))
            return replace(self, coefficients=cs, expansion_point=t0)
        if self.kind == "gaussian":
            return replace(self, width=self.width * alpha, expansion_point=t0)
        return replace(self, expansion_point=t0)

    # -- evaluation -----------------------------------------------------

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full(t.shape, complex(self.value))
        if self.kind == "complex_exponential":
            return np.exp(complex(self.rate) * t)
        if self.kind == "sinusoid":
            return np.sin(self.frequency * t).astype(complex)
        if self.kind == "polynomial":
            return np.polynomial.polynomial.polyval(t, np.array(self.coefficients))
        return np.exp(-((t / self.width) ** 2)).astype(complex)

    def taylor_coefficients(self, order: int) -> np.ndarray:
        """Coefficients ``c_0..c_order`` of ``s`` in powers of ``(t - t0)``."""
        if order < 0:
            raise DomainError("order must be nonnegative")
        t0 = self.expansion_point
        n = np.arange(order + 1)
        out = np.zeros(order + 1, dtype=complex)
        if self.kind == "constant":
            out[0] = self.value
        elif self.kind == "complex_exponential":
            mu = complex(self.rate)
            out[:] = _exp_series(mu, order) * np.exp(mu * t0)
        elif self.kind == "sinusoid":
            w = self.frequency
            theta = w * t0
            cycle = np.array([math.sin(theta), math.cos(theta), -math.sin(theta), -math.cos(theta)])
            out[:] = cycle[n % 4] * _exp_series(w, order).real
        elif self.kind == "polynomial":
            a = self.coefficients
            for k in range(len(a)):
                for j in range(min(k, order) + 1):
                    out[j] += a[k] * math.comb(k, j) * t0 ** (k - j)
        else:
            # g' = -(2/w^2) (t0 + u) g  gives  (n+1) c_{n+1} = -(2/w^2)(t0 c_n + c_{n-1})
            s = 2.0 / self.width**2
            out[0] = math.exp(-((t0 / self.width) ** 2))
            if order >= 1:
                out[1] = -s * t0 * out[0]
            for k in range(1, order):
                out[k + 1] = -s * (t0 * out[k] + out[k - 1]) / (k + 1)
        return out

    def taylor_coefficient(self, n: int) -> complex:
        return complex(self.taylor_coefficients(n)[n])

    def log_growth_bound(self, radius: float) -> float:
        """``log max |s(z)|`` over the circle ``|z - t0| = radius``.

        Exact for the exponential and gaussian kinds, an upper bound for the
        others.  Returns ``-inf`` for the zero function.
        """
        R = float(radius)
        t0 = self.expansion_point
        if self.kind == "constant":
            v = abs(self.value)
            return math.log(v) if v > 0 else -math.inf
        if self.kind == "complex_exponential":
            mu = complex(self.rate)
            return (mu * t0).real + abs(mu) * R
        if self.kind == "sinusoid":
            # |sin(x + iy)| <= cosh(y)
            y = abs(self.frequency) * R
            return y + math.log1p(math.exp(-2 * y)) - math.log(2)
        if self.kind == "polynomial":
            c = np.abs(self.taylor_coefficients(len(self.coefficients) - 1))
            total = float(np.polynomial.polynomial.polyval(R, c))
            return math.log(total) if total > 0 else -math.inf
        # min of Re z^2 over the circle, z = t0 + R exp(i theta)
        if abs(t0) <= 2 * R:
            min_re = t0 * t0 / 2 - R * R
        else:
            min_re = (abs(t0) - R) ** 2
        return -min_re / self.width**2

    def growth_bound(self, radius: float) -> float:
        return math.exp(self.log_growth_bound(radius))

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "constant":
            d["value"] = _complex_to_json(self.value)
        elif self.kind == "complex_exponential":
            d["rate"] = _complex_to_json(self.rate)
        elif self.kind == "sinusoid":
            d["frequency"] = self.frequency
        elif self.kind == "polynomial":
            d["coefficients"] = [_complex_to_json(c) for c in self.coefficients]
        else:
            d["width"] = self.width
        if self.expansion_point != 0.0:
            d["expansion_point"] = self.expansion_point
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AnalyticTarget":
        kind = d.get("kind")
        t0 = float(d.get("expansion_point", 0.0))
        if kind == "constant":
            return cls.constant(_complex_from_json(d.get("value", 1.0)), t0)
        if kind == "complex_exponential":
            return cls.complex_exponential(_complex_from_json(d["rate"]), t0)
        if kind == "sinusoid":
            return cls.sinusoid(float(d["frequency"]), t0)
        if kind == "polynomial":
            return cls.polynomial([_complex_from_json(c) for c in d["coefficients"]], t0)
        if kind == "gaussian":
            return cls.gaussian(float(d["width"]), t0)
        raise DomainError(f"unknown target kind {kind!r}")


def _exp_series(rate: complex, order: int) -> np.ndarray:
    """``rate**n / n!`` for n = 0..order, by the ratio recurrence."""
    out = np.empty(order + 1, dtype=complex)
    term = 1.0 + 0j
    out[0] = term
    for n in range(1, order + 1):
        term = term * rate / n
        out[n] = term
    return out


@dataclass(frozen=True, eq=False)
class ComplexPolynomial:
    """``p(t) = sum c_n (t - expansion_point)**n`` with complex ``c_n``."""

    coefficients: np.ndarray
    expansion_point: float = 0.0

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0:
            raise DomainError("polynomial needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return self.coefficients.size - 1

    def __call__(self, t):
        # Horner in the shifted variable
        u = np.asarray(t, dtype=float) - self.expansion_point
        c = self.coefficients
        acc = np.full(u.shape, c[-1], dtype=complex)
        for coef in c[-2::-1]:
            acc = acc * u + coef
        return acc

    def __eq__(self, other):
        if not isinstance(other, ComplexPolynomial):
            return NotImplemented
        return (
            self.expansion_point == other.expansion_point
            and np.array_equal(self.coefficients, other.coefficients)
        )

    __hash__ = None

    def scaled(self, factor: complex) -> "ComplexPolynomial":
        return ComplexPolynomial(self.coefficients * factor, self.expansion_point)

    def conjugate(self) -> "ComplexPolynomial":
        return ComplexPolynomial(np.conj(self.coefficients), self.expansion_point)

    def recentered(self, point: float) -> "ComplexPolynomial":
        """Same polynomial written in powers of ``(t - point)``."""
        shift = point - self.expansion_point
        if shift == 0:
            return self
        c = self.coefficients
        out = np.zeros_like(c)
        for k in range(c.size):
            for j in range(k + 1):
                out[j] += c[k] * math.comb(k, j) * shift ** (k - j)
        return ComplexPolynomial(out, point)

    def time_scaled(self, alpha: float) -> "ComplexPolynomial":
        """Polynomial ``q(t) = p(alpha * t)``."""
        c = self.coefficients * alpha ** np.arange(self.coefficients.size)
        return ComplexPolynomial(c, self.expansion_point / alpha)

    def to_dict(self) -> dict:
        return {
            "expansion_point": self.expansion_point,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }


@dataclass(frozen=True)
class RemainderBound:
    order: int
    radius: float
    bound_value: float
    exact_terms: int = 0


def _carrier_series(carrier_rate: complex, t0: float, order: int) -> np.ndarray:
    k = complex(carrier_rate)
    return _exp_series(-k, order) * np.exp(-k * t0)


def taylor_product(target: AnalyticTarget, carrier_rate: complex, order: int) -> ComplexPolynomial:
    """Degree-``order`` Taylor polynomial of ``s(t) exp(-carrier_rate t)`` about ``t0``.

    The carrier phase ``exp(-carrier_rate t0)`` is folded into the coefficients,
    so the result approximates the product in absolute time.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    t0 = target.expansion_point
    with np.errstate(all="ignore"):
        s = target.taylor_coefficients(order)
        h = _carrier_series(carrier_rate, t0, order)
        c = np.convolve(s, h)[: order + 1]
    bad = np.flatnonzero(~np.isfinite(c))
    if bad.size:
        raise SynthesisError(f"Taylor coefficient c_{bad[0]} is not finite")
    return ComplexPolynomial(c, t0)


def effective_rate(target: AnalyticTarget, carrier_rate: complex) -> float:
    """Rate converting time radii into the dimensionless contour radius."""
    lam = abs(complex(carrier_rate)) + target.rate_scale
    return lam if lam > 0 else 1.0


def _log_growth_product(target, carrier_rate, R):
    k = complex(carrier_rate)
    return target.log_growth_bound(R) + (-k * target.expansion_point).real + abs(k) * R


def _is_exact(target, carrier_rate, order):
    d = target.exact_degree
    return complex(carrier_rate) == 0 and d is not None and d <= order


def remainder_bound(
    target: AnalyticTarget,
    carrier_rate: complex,
    order: int,
    half_width: float,
    radius: float,
    exact_terms: int = 0,
) -> RemainderBound:
    """Certified sup of ``|g(t) - p_N(t)|`` for ``|t - t0| <= half_width``.

    ``radius`` is dimensionless: the contour has time radius
    ``radius / effective_rate``.  With ``exact_terms = 0`` this is the plain
    Cauchy-estimate bound ``(rho/r)**(N+1) M(r) / (1 - rho/r)``; for
    ``s = 1`` and ``carrier_rate = i*Omega`` it is ``(Omega a / r)**(N+1)
    e**r / (1 - Omega a / r)``.  With ``exact_terms = K`` the first ``K``
    tail terms are summed from their known moduli and the Cauchy estimate is
    applied only beyond them, which is never looser.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    if half_width < 0:
        raise DomainError("half_width must be nonnegative")
    lam = effective_rate(target, carrier_rate)
    if not radius > lam * half_width:
        raise DomainError(
            f"radius {radius} is not admissible; it must exceed {lam * half_width}"
        )
    if half_width == 0 or _is_exact(target, carrier_rate, order):
        return RemainderBound(order, float(radius), 0.0, exact_terms)
    R = radius / lam
    log_m = _log_growth_product(target, carrier_rate, R)
    if math.isnan(log_m) or log_m == math.inf:
        raise DomainError("growth bound is not finite at this radius")
    q = half_width / R
    top = order + exact_terms
    log_tail = log_m + (top + 1) * math.log(q) - math.log1p(-q)
    value = math.exp(log_tail) if log_tail < 709 else math.inf
    if exact_terms:
        c = np.abs(taylor_product(target, carrier_rate, top).coefficients)
        value += _partial_majorant(c, half_width, order + 1, top + 1)
    if not math.isfinite(value):
        raise DomainError("remainder bound is not finite at this radius")
    return RemainderBound(order, float(radius), value, exact_terms)


def _partial_majorant(abs_coeffs, a, lo, hi):
    n = np.arange(lo, hi)
    with np.errstate(divide="ignore", over="ignore"):
        logs = np.log(abs_coeffs[lo:hi]) + n * math.log(a)
        return float(np.sum(np.exp(logs)))


def radius_grid(target: AnalyticTarget, carrier_rate: complex, half_width: float) -> np.ndarray:
    """Geometric grid of admissible dimensionless radii."""
    lam = effective_rate(target, carrier_rate)
    base = lam * half_width if half_width > 0 else lam
    return np.geomspace(RATIO_FLOOR * base, RATIO_CEIL * base, RADIUS_GRID_POINTS)


def best_remainder_bound(
    target: AnalyticTarget,
    carrier_rate: complex,
    order: int,
    half_width: float,
    exact_terms: int = DEFAULT_EXACT_TERMS,
) -> RemainderBound:
    """``remainder_bound`` minimized over :func:`radius_grid`."""
    return _bounds_by_order(target, carrier_rate, half_width, order, exact_terms, only=order)[0]


def _bounds_by_order(target, carrier_rate, half_width, n_max, exact_terms, only=None):
    orders = range(n_max + 1) if only is None else [only]
    if half_width == 0:
        return [RemainderBound(n, 1.0, 0.0, exact_terms) for n in orders]
    lam = effective_rate(target, carrier_rate)
    radii = radius_grid(target, carrier_rate, half_width)
    Rs = radii / lam
    log_m = np.array([_log_growth_product(target, carrier_rate, R) for R in Rs])
    log_q = np.log(half_width / Rs)
    log_1mq = np.log1p(-half_width / Rs)
    abs_c = np.abs(taylor_product(target, carrier_rate, n_max + exact_terms).coefficients)
    out = []
    for n in orders:
        if _is_exact(target, carrier_rate, n):
            out.append(RemainderBound(n, float(radii[0]), 0.0, exact_terms))
            continue
        top = n + exact_terms
        log_tail = log_m + (top + 1) * log_q - log_1mq
        log_tail = np.where(np.isnan(log_tail), np.inf, log_tail)
        i = int(np.argmin(log_tail))
        tail = math.exp(log_tail[i]) if log_tail[i] < 709 else math.inf
        value = tail + (_partial_majorant(abs_c, half_width, n + 1, top + 1) if exact_terms else 0.0)
        out.append(RemainderBound(n, float(radii[i]), value, exact_terms))
    return out


def default_nmax() -> int:
    raw = os.environ.get("SUBOSC_NMAX")
    return int(raw) if raw else DEFAULT_NMAX


def select_order(
    target: AnalyticTarget,
    carrier_rate: complex,
    half_width: float,
    epsilon1: float,
    n_max: Optional[int] = None,
    exact_terms: int = DEFAULT_EXACT_TERMS,
) -> int:
    """Smallest order whose radius-optimized remainder bound is below ``epsilon1``.

    Raises
    ------
    CapacityError
        If no order up to ``n_max`` (default 200, or ``$SUBOSC_NMAX``) works.
        The best bound reached is attached as ``err.best``.
    """
    if not epsilon1 > 0:
        raise DomainError("epsilon1 must be positive")
    n_max = default_nmax() if n_max is None else n_max
    bounds = _bounds_by_order(target, carrier_rate, half_width, n_max, exact_terms)
    for b in bounds:
        if b.bound_value < epsilon1:
            return b.order
    best = min(bounds, key=lambda b: b.bound_value)
    raise CapacityError(
        f"no order <= {n_max} reaches remainder {epsilon1:g}; best bound "
        f"{best.bound_value:.3e} at N={best.order}",
        best=best,
    )
