"""Command-line front end.

    subosc plan     --preset fig1
    subosc synth    --preset fig1 --out fig1a.csv --figure fig1a.svg
    subosc spectrum --preset fig1 --out fig1c.csv
    subosc verify   --preset fig1 --window 500
    subosc sweep    --deltas 1 2 4 8 --orders 19 --out sweep.csv

Exit codes: 0 ok, 2 infeasible, 3 numeric failure, 4 I/O.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import COMMANDS, JobConfig, layered
from .errors import CapacityError, DomainError, NumericError, PlanError, SynthesisError
from .synthesis import make_plan, plan_synthesis, synthesize, synthesize_band
from .targets import KINDS, AnalyticTarget
from .verify import measure_dynamic_range, measure_error, sample_grid, verify

log = logging.getLogger("subosc")

EXIT_OK, EXIT_INFEASIBLE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
DEFAULT_EPSILON = 1e-2
DEFAULT_SURVEY = 500.0


def _num(x) -> str:
    return format(float(x), ".17g")


def parse_target(text: str) -> dict:
    """A kind name (``constant`` means ``s = 1``) or a JSON record."""
    text = text.strip()
    if text.startswith("{"):
        d = json.loads(text)
    elif text in KINDS:
        defaults = {
            "constant": {"value": 1.0},
            "complex_exponential": {"rate": [0.0, 1.0]},
            "sinusoid": {"frequency": math.pi / 2},
            "polynomial": {"coefficients": [1.0]},
            "gaussian": {"width": 1.0},
        }
        d = {"kind": text, **defaults[text]}
    else:
        raise argparse.ArgumentTypeError(f"unknown target {text!r}")
    AnalyticTarget.from_dict(d)
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("synthesis")
    g.add_argument("--config", help="JSON job configuration file")
    g.add_argument("--preset", help="named parameter set (fig1)")
    g.add_argument("--target", type=parse_target, help="kind name or JSON record")
    g.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"))
    g.add_argument("--omega", type=float, help="carrier, rad/unit-time")
    g.add_argument("--delta", type=float, help="dilation factor")
    g.add_argument("--order", type=int, help="Taylor order (skips automatic selection)")
    g.add_argument("--epsilon", type=float, help="total error budget")
    g.add_argument("--mode", choices=["one-sided", "two-sided-half", "two-sided-conj",
                                      "one_sided", "half_half", "conjugate"])
    g.add_argument("--band", nargs=2, type=float, metavar=("W1", "W2"),
                   help="place the spectrum on [W1, W2]")
    g.add_argument("--superoscillation", action="store_true", default=None,
                   help="allow bands containing zero frequency")
    g.add_argument("--force", action="store_true", default=None,
                   help="assemble even when the plan is infeasible")
    o = common.add_argument_group("output")
    o.add_argument("--grid-density", type=float, help="samples per period of omega_max")
    o.add_argument("--window", type=float, nargs="+", metavar="W",
                   help="half-width W about the interval center, or LO HI")
    o.add_argument("--omega-range", nargs=2, type=float, metavar=("LO", "HI"))
    o.add_argument("--points", type=int, help="spectrum sample count")
    o.add_argument("--out", help="output path, '-' for stdout")
    o.add_argument("--format", choices=["csv", "json", "svg", "png"])
    o.add_argument("--figure", help="also render a figure to this path")
    o.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="subosc", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("plan", parents=[common], help="print the synthesis plan")
    sub.add_parser("synth", aliases=["synthesize"], parents=[common], help="waveform samples")
    sub.add_parser("spectrum", parents=[common], help="exact spectrum samples and knots")
    sub.add_parser("verify", parents=[common], help="error / extent / dynamic range report")
    sw = sub.add_parser("sweep", parents=[common], help="long-format parameter sweep")
    sw.add_argument("--orders", nargs="+", type=int)
    sw.add_argument("--deltas", nargs="+", type=float)
    sw.add_argument("--omegas", nargs="+", type=float)
    sw.add_argument("--half-widths", nargs="+", type=float)
    return parser


def config_from_args(args) -> JobConfig:
    command = "synth" if args.command == "synthesize" else args.command
    file_layer = {}
    if args.config:
        file_layer = json.loads(Path(args.config).read_text())
    flags = {
        "preset": args.preset,
        "target": args.target,
        "interval": args.interval,
        "omega": args.omega,
        "delta": args.delta,
        "order": args.order,
        "epsilon": args.epsilon,
        "mode": args.mode,
        "band": args.band,
        "superoscillation": args.superoscillation,
        "force": args.force,
        "grid_density": args.grid_density,
        "window": args.window,
        "omega_range": args.omega_range,
        "points": args.points,
        "out": args.out,
        "format": args.format,
        "figure": args.figure,
    }
    for name in ("orders", "deltas", "omegas", "half_widths"):
        flags[name] = getattr(args, name, None)
    cfg = layered(JobConfig().to_dict(), file_layer, flags)
    return replace(cfg, command=command)


def build(cfg: JobConfig):
    """``(function, target, plan)`` for a resolved configuration."""
    target = AnalyticTarget.from_dict(cfg.target)
    bandpass = not cfg.superoscillation
    if cfg.band is not None:
        f = synthesize_band(target, cfg.interval, cfg.band, cfg.epsilon or DEFAULT_EPSILON,
                            cfg.delta, cfg.mode, cfg.superoscillation)
        return f, target, f.plan
    if cfg.order is not None:
        plan = make_plan(cfg.omega, cfg.order, cfg.delta, cfg.interval, target, bandpass=bandpass)
    else:
        plan = plan_synthesis(target, cfg.interval, cfg.epsilon or DEFAULT_EPSILON, cfg.omega,
                              cfg.delta, bandpass=bandpass)
    return synthesize(target, plan, cfg.mode, cfg.force), target, plan


def _survey(cfg: JobConfig, default_half_width: float):
    a, b = cfg.interval
    mid = 0.5 * (a + b)
    if cfg.window is None:
        return mid - default_half_width, mid + default_half_width
    if len(cfg.window) == 1:
        return mid - cfg.window[0], mid + cfg.window[0]
    lo, hi = cfg.window
    return lo, hi


def _open(path):
    if path == "-":
        return _Stdout()
    return open(path, "w", newline="")


class _Stdout(io.StringIO):
    def close(self):
        sys.stdout.write(self.getvalue())
        sys.stdout.flush()
        super().close()


def _write_csv(path, header, rows):
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_num(x) if isinstance(x, (float, np.floating)) else x for x in row])


def _write_json(path, obj):
    with _open(path) as fh:
        fh.write(json.dumps(obj, indent=2, allow_nan=True) + "\n")


def cmd_plan(cfg: JobConfig) -> int:
    _, _, plan = build(cfg)
    _write_json(cfg.out, plan.to_dict())
    return EXIT_OK


def cmd_synth(cfg: JobConfig) -> int:
    f, target, plan = build(cfg)
    a, b = cfg.interval
    lo, hi = _survey(cfg, 1.5 * 0.5 * (b - a))
    t = sample_grid(f, (lo, hi), cfg.grid_density)
    v = f(t)
    with np.errstate(divide="ignore"):
        err = np.log10(np.abs(v - target(t)))
    if cfg.format in ("svg", "png"):
        _synth_figure(cfg.out, f, t, v, target(t), (a, b))
        return EXIT_OK
    cols = {"t": t, "re": v.real, "im": v.imag, "abs": np.abs(v), "log10_abs_error": err}
    if cfg.format == "json":
        _write_json(cfg.out, {"plan": plan.to_dict(),
                              **{k: [float(x) for x in c] for k, c in cols.items()}})
    else:
        _write_csv(cfg.out, list(cols), zip(*cols.values()))
    if cfg.figure:
        _synth_figure(cfg.figure, f, t, v, target(t), (a, b))
    return EXIT_OK


def _synth_figure(path, f, t, v, s, interval):
    from . import plots

    a, b = interval
    if t[-1] - t[0] > 4 * (b - a):
        plots.extended_figure(path, t, v)
    else:
        w_min = f.band[0]
        plots.waveform_figure(path, t, v, s, w_min if w_min > 0 else None)


def _spectrum_grid(cfg: JobConfig, f):
    if cfg.omega_range is not None:
        lo, hi = cfg.omega_range
    else:
        los, his = zip(*f.bands)
        lo, hi = min(los), max(his)
        pad = 0.25 * (hi - lo) / len(f.bands)
        lo, hi = lo - pad, hi + pad
    return np.linspace(lo, hi, cfg.points)


def _sidecar_path(out: str) -> str:
    p = Path(out)
    return str(p.with_suffix(".json")) if p.suffix.lower() == ".csv" else out + ".json"


def cmd_spectrum(cfg: JobConfig) -> int:
    from .spectral import evaluate_spectra, spectrum_of

    f, _, plan = build(cfg)
    specs = spectrum_of(f)
    w = _spectrum_grid(cfg, f)
    F = evaluate_spectra(specs, w)
    meta = {
        "plan": plan.to_dict(),
        "bands": [list(b) for b in f.bands],
        "spectra": [s.to_dict() for s in specs],
    }
    if cfg.format in ("svg", "png"):
        from . import plots

        plots.spectrum_figure(cfg.out, w, specs)
        return EXIT_OK
    if cfg.format == "json":
        meta.update({"omega": [float(x) for x in w], "re": [float(x) for x in F.real],
                     "im": [float(x) for x in F.imag], "abs": [float(x) for x in np.abs(F)]})
        _write_json(cfg.out, meta)
    else:
        _write_csv(cfg.out, ["omega", "re", "im", "abs"], zip(w, F.real, F.imag, np.abs(F)))
        if cfg.out != "-":
            _write_json(_sidecar_path(cfg.out), meta)
    if cfg.figure:
        from . import plots

        plots.spectrum_figure(cfg.figure, w, specs)
    return EXIT_OK


def cmd_verify(cfg: JobConfig) -> int:
    cfg = replace(cfg, format=cfg.format or "json")
    f, target, plan = build(cfg)
    a, b = cfg.interval
    half = max(DEFAULT_SURVEY, 2 * max(abs(a), abs(b)))
    window = _survey(cfg, half)
    report = verify(f, target, cfg.interval, window, cfg.grid_density)
    out = {**report.to_dict(), "plan": plan.to_dict()}
    if cfg.format in ("svg", "png"):
        _verify_figure(cfg.out, cfg, f, target, window)
        return EXIT_OK
    if cfg.format == "csv":
        d = report.to_dict()
        header = ["sup_error", "periods", "dynamic_range_orders", "classification",
                  "grid_density", "grid_spacing", "window_lo", "window_hi"]
        row = [d["sup_error"], d["periods"], d["dynamic_range_orders"], d["classification"],
               float(d["grid"]["density"]), d["grid"]["spacing"], *map(float, d["window"])]
        _write_csv(cfg.out, header, [row])
    else:
        _write_json(cfg.out, out)
    if cfg.figure:
        _verify_figure(cfg.figure, cfg, f, target, window)
    return EXIT_OK


def _verify_figure(path, cfg, f, target, window):
    from . import plots

    plots.overview_figure(path, f, target, cfg.interval, window, _spectrum_grid(cfg, f))


SWEEP_HEADER = ["order", "delta", "omega", "half_width", "feasible", "certified_eps1",
                "certified_eps2", "measured_error", "dynamic_range_orders", "diagnostics"]


def sweep_rows(cfg: JobConfig):
    target = AnalyticTarget.from_dict(cfg.target)
    a, b = cfg.interval
    mid = 0.5 * (a + b)
    for order, delta, omega, hw in itertools.product(cfg.orders, cfg.deltas, cfg.omegas,
                                                     cfg.half_widths):
        interval = (mid - hw, mid + hw)
        try:
            plan = make_plan(omega, order, delta, interval, target,
                             bandpass=not cfg.superoscillation)
        except DomainError as exc:
            yield [order, float(delta), float(omega), float(hw), "false", math.nan, math.nan,
                   math.nan, math.nan, str(exc)]
            continue
        f = synthesize(target, plan, cfg.mode, force=True)
        err = measure_error(f, target, interval, cfg.grid_density).sup_error
        survey = _survey(replace(cfg, interval=interval), max(DEFAULT_SURVEY, 2 * hw))
        dr = measure_dynamic_range(f, interval, survey, cfg.grid_density)
        yield [order, float(delta), float(omega), float(hw), str(plan.feasible).lower(),
               plan.certified_epsilon1, plan.certified_epsilon2, err, dr, plan.diagnostics]


def cmd_sweep(cfg: JobConfig) -> int:
    _write_csv(cfg.out, SWEEP_HEADER, sweep_rows(cfg))
    return EXIT_OK


HANDLERS = {
    "plan": cmd_plan,
    "synth": cmd_synth,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}
assert set(HANDLERS) == set(COMMANDS)


def run(cfg: JobConfig) -> int:
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return run(cfg)
    except (PlanError, CapacityError, DomainError) as exc:
        print(f"subosc: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (NumericError, SynthesisError, FloatingPointError) as exc:
        print(f"subosc: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"subosc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"subosc: bad configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
