"""Piecewise polynomials on a knot sequence, in local monomial form."""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as P

JUMP_THRESHOLD = 1e-9


class PiecewisePolynomial:
    """Piecewise polynomial, zero outside ``[knots[0], knots[-1]]``.

    Piece ``j`` lives on ``[knots[j], knots[j+1]]`` and is stored as
    ascending coefficients in the local variable ``u = x - knots[j]``.
    Pieces are right-continuous at interior knots; the last piece also
    owns the right end of the support.
    """

    def __init__(self, knots, coefficients):
        knots = np.asarray(knots, dtype=float)
        coefficients = np.atleast_2d(np.asarray(coefficients))
        if knots.ndim != 1 or knots.size < 2:
            raise ValueError("need at least two knots")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        if coefficients.shape[0] != knots.size - 1:
            raise ValueError(
                f"{coefficients.shape[0]} pieces given for {knots.size - 1} knot intervals"
            )
        self.knots = knots
        self.coefficients = coefficients

    @property
    def degree(self) -> int:
        return self.coefficients.shape[1] - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.knots)

    @property
    def support(self):
        return float(self.knots[0]), float(self.knots[-1])

    def piece_index(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.knots, x, side="right") - 1
        idx = np.where(x == self.knots[-1], self.knots.size - 2, idx)
        inside = (idx >= 0) & (idx < self.knots.size - 1)
        return idx, inside

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        idx, inside = self.piece_index(x)
        out = np.zeros(x.shape, dtype=self.coefficients.dtype)
        if not np.any(inside):
            return out
        j = idx[inside]
        u = x[inside] - self.knots[j]
        c = self.coefficients[j]
        acc = c[:, -1].copy()
        for k in range(self.degree - 1, -1, -1):
            acc = acc * u + c[:, k]
        out[inside] = acc
        return out

    def piece_values(self, j, u):
        return P.polyval(u, self.coefficients[j])

    def one_sided(self, j):
        """``(left, right)`` limits at ``knots[j]``; zero beyond the support."""
        n = self.knots.size - 1
        left = self.piece_values(j - 1, self.widths[j - 1]) if j >= 1 else 0.0
        right = self.coefficients[j, 0] if j < n else 0.0
        return left, right

    def derivative(self, k: int = 1) -> "PiecewisePolynomial":
        c = self.coefficients
        if k == 0:
            return PiecewisePolynomial(self.knots, c.copy())
        if k > self.degree:
            return PiecewisePolynomial(self.knots, np.zeros((c.shape[0], 1), dtype=c.dtype))
        return PiecewisePolynomial(self.knots, P.polyder(c, k, axis=1))

    def integral(self):
        """Exact integral over the support."""
        c = self.coefficients
        k = np.arange(c.shape[1])
        powers = self.widths[:, None] ** (k + 1) / (k + 1)
        return np.sum(c * powers)

    def abs2_integral(self) -> float:
        """Exact integral of ``|p(x)|**2`` over the support."""
        total = 0.0
        for j, h in enumerate(self.widths):
            c = self.coefficients[j]
            sq = P.polymul(c, np.conj(c))
            total += P.polyval(h, P.polyint(sq)).real
        return float(total)

    def peak(self, samples: int = 33) -> float:
        """Max of ``|p|`` over a per-piece sample grid including the knots."""
        u = np.linspace(0.0, 1.0, samples)
        vals = [np.max(np.abs(self.piece_values(j, u * h))) for j, h in enumerate(self.widths)]
        return float(max(vals))

    def jumps(self, threshold: float = JUMP_THRESHOLD, scale: float | None = None):
        """Knots where one-sided limits differ by more than ``threshold * scale``.

        ``scale`` defaults to :meth:`peak`.  Returns ``[(knot, |jump|), ...]``.
        """
        scale = self.peak() if scale is None else scale
        out = []
        for j, x in enumerate(self.knots):
            left, right = self.one_sided(j)
            jump = abs(right - left)
            if jump > threshold * scale:
                out.append((float(x), float(jump)))
        return out

    def is_zero_piece(self, j) -> bool:
        return not np.any(self.coefficients[j])

    def shifted(self, offset: float) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.knots + offset, self.coefficients.copy())

    def scaled(self, factor) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.knots, self.coefficients * factor)

    def dilated(self, alpha: float) -> "PiecewisePolynomial":
        """``q(x) = p(x / alpha) / alpha``, the spectrum of ``f(alpha t)``."""
        k = np.arange(self.coefficients.shape[1])
        return PiecewisePolynomial(self.knots * alpha, self.coefficients / alpha ** (k + 1))

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        if not np.array_equal(self.knots, other.knots):
            raise ValueError("knot sequences differ")
        a, b = self.coefficients, other.coefficients
        width = max(a.shape[1], b.shape[1])
        dtype = np.result_type(a, b)
        out = np.zeros((a.shape[0], width), dtype=dtype)
        out[:, : a.shape[1]] += a
        out[:, : b.shape[1]] += b
        return PiecewisePolynomial(self.knots, out)

    def to_dict(self) -> dict:
        c = self.coefficients
        if np.iscomplexobj(c):
            pieces = [[[z.real, z.imag] for z in row] for row in c]
        else:
            pieces = [[float(z) for z in row] for row in c]
        return {"knots": [float(x) for x in self.knots], "pieces": pieces}


def gauss_legendre_transform(pp: PiecewisePolynomial, t, nodes: int = 24):
    """``(1/2pi) * integral of pp(w) exp(i w t) dw`` by composite Gauss-Legendre.

    Each piece is split so that no panel spans more than half an
    oscillation period at the largest ``|t|``.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    x, w = np.polynomial.legendre.leggauss(nodes)
    tmax = float(np.max(np.abs(t))) if t.size else 0.0
    out = np.zeros(t.shape, dtype=complex)
    for j, h in enumerate(pp.widths):
        panels = max(1, math.ceil(h * tmax / math.pi))
        edges = np.linspace(0.0, h, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
            vals = pp.piece_values(j, u) * (0.5 * (hi - lo) * w)
            omega = pp.knots[j] + u
            out += np.exp(1j * np.outer(t, omega)) @ vals
    return out / (2 * math.pi)
