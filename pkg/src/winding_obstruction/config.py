"""TOML experiment configuration for sweeps."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .cohomology import Chain2
from .errors import ConfigError, ObstructionError
from .linalg import TraceKind
from .obstruction import Family


def parse_p(value: Any) -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        p = float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad Schatten exponent {value!r}") from exc
    if not p > 1:
        raise ConfigError(f"Schatten exponent must be > 1, got {p}")
    return p


@dataclass
class ExperimentConfig:
    family: Family
    cycle: Chain2 | str | None = None
    n_grid: list[int] = field(default_factory=lambda: [8, 16, 32, 64, 128, 256])
    ps: list[float] = field(default_factory=lambda: [2.0, math.inf])
    trace: TraceKind = TraceKind.UNNORMALIZED
    eps_perturb: float = 0.0
    seed: int = 0
    out_dir: Path = Path("out")
    n0: int = 8
    defect_threshold: float = 0.1

    def validate(self) -> "ExperimentConfig":
        if not self.n_grid:
            raise ConfigError("n_grid must be nonempty")
        if self.n_grid != sorted(set(self.n_grid)):
            raise ConfigError("n_grid must be strictly ascending")
        if min(self.n_grid) < 2:
            raise ConfigError("grid sizes must be >= 2")
        if not 0 <= self.eps_perturb < 0.1:
            raise ConfigError("eps_perturb must lie in [0, 0.1)")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        return self

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path = Path(".")) -> "ExperimentConfig":
        data = dict(data)
        try:
            family = Family(str(data.pop("family")), int(data.pop("genus", 2)), int(data.pop("charge", 1)))
            cycle = parse_cycle(data.pop("cycle", None), family)
            cfg = cls(family=family, cycle=cycle)
            if "n_grid" in data:
                cfg.n_grid = [int(n) for n in data.pop("n_grid")]
            if "ps" in data:
                cfg.ps = [parse_p(p) for p in data.pop("ps")]
            if "trace" in data:
                cfg.trace = TraceKind.parse(data.pop("trace"))
            cfg.eps_perturb = float(data.pop("eps_perturb", 0.0))
            cfg.seed = int(data.pop("seed", 0))
            cfg.out_dir = base_dir / str(data.pop("out_dir", "out"))
            cfg.n0 = int(data.pop("n0", 8))
            cfg.defect_threshold = float(data.pop("defect_threshold", 0.1))
        except KeyError as exc:
            raise ConfigError(f"missing config key {exc}") from exc
        except (ObstructionError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if data:
            raise ConfigError(f"unknown config keys: {sorted(data)}")
        return cfg.validate()

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            with open(path, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        return cls.from_dict(data)


def parse_cycle(value: Any, family: Family) -> Chain2 | str | None:
    """``None``/``"default"`` -> family defaults, ``"hopf"``, ``"std"``, or chain JSON (text or list)."""
    if value is None or value == "default":
        return None
    if value == "hopf":
        return "hopf"
    if value == "std":
        chain = family.default_chain()
        if chain is None:
            raise ConfigError(f"family {family.name} has no standard bar cycle")
        return chain
    if isinstance(value, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cycle is neither a keyword nor chain JSON: {exc}") from exc
    chain = family.default_chain()
    if chain is None:
        raise ConfigError(f"family {family.name} has no normal form; use cycle = 'hopf'")
    return Chain2.from_json(value, chain.model)
