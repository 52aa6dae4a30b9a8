"""Job configuration records and named presets.

Units are fixed throughout: times in unit-time, frequencies in
rad/unit-time.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from typing import Optional

COMMANDS = ("plan", "synth", "spectrum", "verify", "sweep")

# never edit in place: the golden-file test pins these values
PRESETS = {
    "fig1": {
        "target": {"kind": "constant", "value": 1.0},
        "interval": (-1.0, 1.0),
        "order": 19,
        "omega": 2 * math.pi,
        "delta": 4.0,
        "mode": "one_sided",
    },
}

_TUPLE_FIELDS = ("interval", "band", "omega_range", "window", "orders", "deltas", "omegas",
                 "half_widths")


@dataclass(frozen=True)
class JobConfig:
    command: str = "synth"
    preset: Optional[str] = None
    target: dict = None
    interval: tuple = (-1.0, 1.0)
    omega: float = 2 * math.pi
    delta: float = 4.0
    order: Optional[int] = None
    epsilon: Optional[float] = None
    mode: str = "one_sided"
    band: Optional[tuple] = None
    superoscillation: bool = False
    grid_density: float = 50.0
    window: Optional[tuple] = None
    omega_range: Optional[tuple] = None
    points: int = 2001
    out: str = "-"
    format: Optional[str] = None
    figure: Optional[str] = None
    force: bool = False
    orders: tuple = (19,)
    deltas: tuple = (4.0,)
    omegas: tuple = (2 * math.pi,)
    half_widths: tuple = (1.0,)

    def __post_init__(self):
        if self.target is None:
            object.__setattr__(self, "target", {"kind": "constant", "value": 1.0})
        for name in _TUPLE_FIELDS:
            v = getattr(self, name)
            if isinstance(v, list):
                object.__setattr__(self, name, tuple(v))

    def to_dict(self) -> dict:
        d = asdict(self)
        for name in _TUPLE_FIELDS:
            if d[name] is not None:
                d[name] = list(d[name])
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "JobConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "JobConfig":
        return cls.from_dict(json.loads(text))


def layered(base: dict, *overlays: dict) -> JobConfig:
    """Merge overlays onto ``base`` (later wins); a ``preset`` key pulls in its values first."""
    merged = dict(base)
    preset = None
    for layer in overlays:
        preset = layer.get("preset", preset)
    if preset is not None:
        if preset not in PRESETS:
            raise ValueError(f"unknown preset {preset!r}")
        merged.update(PRESETS[preset])
        merged["preset"] = preset
    for layer in overlays:
        merged.update({k: v for k, v in layer.items() if v is not None})
    return JobConfig.from_dict(merged)
