"""Experiment configuration: key=value files, flag overrides and range checks."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .errors import ConfigError
from .groups import FAMILIES

OUTPUT_ENV = "CUSPKIT_OUTPUT_DIR"

# settings that change how a run executes but never what it computes
EXECUTION_KEYS = ("workers", "output_dir")


@dataclass(frozen=True)
class ExperimentConfig:
    family: str = "free"
    rank: int = 2
    subgroup: tuple[str, ...] = ("a",)
    R: int = 4
    D: int = 3
    seed: int = 0
    triangles: int = 500
    policy: str = "first"
    cap: int = 4
    budget: int = 200
    qg_budget: int = 32
    visual_budget: int = 20_000
    r_max: int = 0
    window: int = 0
    basepoints: int = 5
    workers: int = 1
    output_dir: str = "out"
    analyses: tuple[str, ...] = field(default=("delta",))

    def validate(self) -> "ExperimentConfig":
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; choose from {', '.join(sorted(FAMILIES))}")
        if self.family == "free_product" and self.rank != 2:
            raise ConfigError("free_product needs rank 2")
        checks = {
            "rank": (1, 26),
            "R": (1, 16),
            "D": (0, 16),
            "seed": (0, 2**63 - 1),
            "triangles": (1, 10**6),
            "cap": (1, 64),
            "budget": (0, 10**7),
            "qg_budget": (0, 10**6),
            "visual_budget": (0, 10**8),
            "r_max": (0, 10**4),
            "window": (0, 10**4),
            "basepoints": (1, 64),
            "workers": (1, 256),
        }
        for key, (lo, hi) in checks.items():
            v = getattr(self, key)
            if not lo <= v <= hi:
                raise ConfigError(f"{key}={v} outside [{lo}, {hi}]")
        if self.policy not in ("first", "all_up_to_cap"):
            raise ConfigError(f"unknown geodesic policy {self.policy!r}")
        letters = "abcdefghijklmnopqrstuvwxyz"[: self.rank]
        for s in self.subgroup:
            if len(s) != 1 or s not in letters:
                raise ConfigError(f"subgroup generator {s!r} is not a basis letter of rank {self.rank}")
        return self

    def echo(self) -> dict[str, Any]:
        """Everything that determines the computed values."""
        d = asdict(self)
        for k in EXECUTION_KEYS:
            d.pop(k)
        d["subgroup"] = list(self.subgroup)
        d["analyses"] = list(self.analyses)
        return d


_TYPES = {f.name: f.type for f in fields(ExperimentConfig)}


def _coerce(key: str, raw: Any) -> Any:
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    kind = _TYPES[key]
    if isinstance(raw, str):
        text = raw.strip()
    else:
        text = raw
    try:
        if kind == "int":
            return int(text)
        if kind.startswith("tuple"):
            if isinstance(text, (list, tuple)):
                return tuple(str(t) for t in text)
            return tuple(t.strip() for t in text.split(",") if t.strip())
        return str(text)
    except (TypeError, ValueError):
        raise ConfigError(f"bad value {raw!r} for {key}") from None


def parse_config_text(text: str) -> dict[str, Any]:
    out = {}
    for n, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = _coerce(key, value)
    return out


def load_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    env: Mapping[str, str] | None = None,
) -> ExperimentConfig:
    """Defaults, then the file, then the output-directory variable, then flags."""
    values: dict[str, Any] = {}
    if path is not None:
        try:
            values.update(parse_config_text(Path(path).read_text()))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
    env = os.environ if env is None else env
    if env.get(OUTPUT_ENV):
        values["output_dir"] = env[OUTPUT_ENV]
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = _coerce(key, value)
    return replace(ExperimentConfig(), **values).validate()
