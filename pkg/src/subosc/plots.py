"""Static figures: waveform zoom, extended real part, spectrum magnitude."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .spectral import evaluate_spectra

plt.rcParams.update(
    {
        "svg.hashsalt": "subosc",
        "font.size": 9,
        "axes.titlesize": 9,
        "axes.linewidth": 0.8,
        "lines.linewidth": 1.0,
        "legend.fontsize": 7,
        "legend.frameon": False,
    }
)

# no timestamps, so identical inputs give identical files
_METADATA = {"svg": {"Date": None}, "png": {"Software": None}, "pdf": {"CreationDate": None}}


def _save(fig, path):
    ext = str(path).rsplit(".", 1)[-1].lower()
    fig.savefig(path, metadata=_METADATA.get(ext), bbox_inches="tight")
    plt.close(fig)


def plot_waveform(ax, t, values, target_values, omega_min=None, shift=5.0):
    """Real/imaginary parts, log10 error and the lowest-frequency reference."""
    ax.plot(t, values.real, color="tab:blue", label="Re f")
    ax.plot(t, values.imag, color="tab:red", label="Im f")
    with np.errstate(divide="ignore"):
        err = np.log10(np.abs(values - target_values))
    ax.plot(t, err, color="black", label="log10 |f - s|")
    if omega_min:
        ax.plot(t, np.cos(omega_min * t) - shift, "k--", label=f"cos(w_min t) - {shift:g}")
    ax.set_xlabel("t")
    ax.legend(loc="lower right")


def plot_extended(ax, t, values):
    ax.plot(t, values.real, color="tab:blue", linewidth=0.5)
    ax.set_xlabel("t")
    ax.set_ylabel("Re f")


def plot_spectrum(ax, omega, specs):
    """``|F|`` with vertical segments at the recorded discontinuities."""
    mag = np.abs(evaluate_spectra(specs, omega))
    ax.plot(omega / math.pi, mag, color="tab:blue")
    for s in specs:
        for x, _ in s.discontinuities:
            left = abs(evaluate_spectra([s], [np.nextafter(x, -np.inf)])[0])
            right = abs(evaluate_spectra([s], [np.nextafter(x, np.inf)])[0])
            ax.plot([x / math.pi, x / math.pi], [left, right], color="black", linewidth=0.8)
    ax.set_xlabel("omega / pi")
    ax.set_ylabel("|F(omega)|")


def waveform_figure(path, t, values, target_values, omega_min=None):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    plot_waveform(ax, t, values, target_values, omega_min)
    _save(fig, path)


def extended_figure(path, t, values):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    plot_extended(ax, t, values)
    _save(fig, path)


def spectrum_figure(path, omega, specs):
    fig, ax = plt.subplots(figsize=(5, 3.2))
    plot_spectrum(ax, omega, specs)
    _save(fig, path)


def overview_figure(path, f, target, interval, window, omega):
    """Three stacked panels: zoom on the interval, extended window, spectrum."""
    from .spectral import spectrum_of

    a, b = interval
    pad = 0.25 * (b - a)
    tz = np.linspace(a - pad, b + pad, 2001)
    lo, hi = window
    te = np.linspace(lo, hi, 20001)
    fig, axes = plt.subplots(3, 1, figsize=(5, 8.5))
    band = f.band
    plot_waveform(axes[0], tz, f(tz), target(tz), band[0] if band[0] > 0 else None)
    axes[0].set_title("(a)")
    plot_extended(axes[1], te, f(te))
    axes[1].set_title("(b)")
    plot_spectrum(axes[2], omega, spectrum_of(f))
    axes[2].set_title("(c)")
    fig.tight_layout()
    _save(fig, path)
