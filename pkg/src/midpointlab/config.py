"""Run configuration shared by the CLI subcommands.

Configs round-trip through a flat key=value file whose keys match the
command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path


@dataclass
class RunConfig:
    n0: int = 2
    level: int = 5
    power: int | None = None
    k: int | None = None
    epsilon: Fraction | None = None
    mode: str = "exact"  # exact | greedy | sampled
    exhaustive: bool = False
    threads: int = 0     # 0 = use available cores
    seed: int = 0
    out: str | None = None
    format: str = "json"  # dot | csv | json
    budget_vertices: int = 10_000_000
    budget_edges: int = 1_000_000_000
    time_cap: float = 60.0

    def __post_init__(self):
        if self.n0 < 0:
            raise ValueError("n0 must be non-negative")
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.budget_vertices <= 0 or self.budget_edges <= 0 or self.time_cap <= 0:
            raise ValueError("budgets must be positive")
        if self.mode not in ("exact", "greedy", "sampled"):
            raise ValueError(f"mode must be exact, greedy or sampled, not {self.mode!r}")
        if self.format not in ("dot", "csv", "json"):
            raise ValueError(f"format must be dot, csv or json, not {self.format!r}")
        if self.epsilon is not None and not (0 < self.epsilon < Fraction(1, 16)):
            raise ValueError("epsilon must lie strictly between 0 and 1/16")

    @property
    def effective_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, Fraction):
                val = f"{val.numerator}/{val.denominator}"
            out[f.name] = val
        return out

    def to_file(self, path) -> None:
        lines = []
        for key, val in self.to_dict().items():
            if val is None:
                continue
            lines.append(f"{key}={val}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        values = {}
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key=value): {raw!r}")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
        return cls.from_mapping(values)

    @classmethod
    def from_mapping(cls, values: dict) -> "RunConfig":
        kwargs = {}
        typed = {f.name: f for f in fields(cls)}
        for key, val in values.items():
            if key not in typed:
                raise ValueError(f"unknown config key {key!r}")
            kwargs[key] = _coerce(key, val)
        return cls(**kwargs)


def _coerce(key: str, val):
    if val is None or not isinstance(val, str):
        return val
    if key in ("n0", "level", "power", "k", "threads", "seed", "budget_vertices", "budget_edges"):
        return int(val)
    if key == "time_cap":
        return float(val)
    if key == "epsilon":
        return Fraction(val)
    if key == "exhaustive":
        return val.lower() in ("1", "true", "yes", "on")
    return val
