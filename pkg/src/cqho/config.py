"""Shared run configuration: flat key=value files, flag overrides, hashing."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path

__all__ = ["RunConfig", "load_config_file", "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "tail_mass": 1e-10,
    "eigen_residual": 1e-8,
    "quad_abs": 1e-10,
    "fd_estimate_cap": 1e-2,
}

_FLOAT_KEYS = ("m", "omega", "a", "beta_mod", "beta_phase_deg")


@dataclass(frozen=True)
class RunConfig:
    """Physical parameters and tolerances shared by all subcommands.

    Defaults are the hbar = m = omega = 1 unit system; beta is carried as a
    modulus plus a phase in degrees (angles are degrees at every user
    surface and radians internally).
    """

    m: float = 1.0
    omega: float = 1.0
    a: float = 1.0
    beta_mod: float = 1.0
    beta_phase_deg: float = 0.0
    fock_dim_cap: int = 256
    output_dir: Path = Path(".")
    threads: int | None = None
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self) -> None:
        if self.m <= 0 or self.omega <= 0 or self.a <= 0:
            raise ValueError("m, omega and a must be positive")
        if self.fock_dim_cap < 16:
            raise ValueError("fock_dim_cap must be >= 16")
        if any(v <= 0 for v in self.tolerances.values()):
            raise ValueError("all tolerances must be positive")
        object.__setattr__(self, "output_dir", Path(self.output_dir))

    @property
    def beta(self) -> complex:
        import numpy as np

        return self.beta_mod * np.exp(1j * np.radians(self.beta_phase_deg))

    def with_overrides(self, **kwargs) -> "RunConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)

    def canonical_lines(self) -> list[str]:
        lines = [f"{k}={format(getattr(self, k), '.10g')}" for k in _FLOAT_KEYS]
        lines.append(f"fock_dim_cap={self.fock_dim_cap}")
        lines.extend(
            f"tol.{k}={format(v, '.10g')}" for k, v in sorted(self.tolerances.items())
        )
        return lines

    def hash(self) -> str:
        digest = hashlib.sha256("\n".join(self.canonical_lines()).encode()).hexdigest()
        return digest[:12]

    def header_comment(self) -> str:
        return "# " + " ".join([f"config_hash={self.hash()}"] + self.canonical_lines())


def load_config_file(path: str | Path) -> RunConfig:
    """Parse a flat key=value file; '#' starts a comment, blank lines ignored."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key] = value

    kwargs: dict = {}
    tolerances = dict(DEFAULT_TOLERANCES)
    for key, value in raw.items():
        if key.startswith("tol."):
            tolerances[key[4:]] = float(value)
        elif key in _FLOAT_KEYS:
            kwargs[key] = float(value)
        elif key == "fock_dim_cap":
            kwargs[key] = int(value)
        elif key == "output_dir":
            kwargs[key] = Path(value)
        elif key == "threads":
            kwargs[key] = int(value)
        else:
            raise ValueError(f"{path}: unknown config key {key!r}")
    return RunConfig(tolerances=tolerances, **kwargs)
