"""Modular neural architecture search."""

from nasforge._nasforge import (
    ConfigError,
    Error,
    GenotypeError,
    Session,
    final_sample_config,
    hwcost,
    registry,
    sample_config,
)

__all__ = [
    "ConfigError",
    "Error",
    "GenotypeError",
    "Session",
    "final_sample_config",
    "hwcost",
    "registry",
    "sample_config",
]
