"""
Configuration management for obsaudit.

This module provides type-safe run configuration using Pydantic models.
It supports loading configuration from environment variables and plain
``key = value`` files, validates every cap against its module limit, and
pushes the active caps into the process-wide :data:`LIMITS` registry that
the computational modules consult.

Priority (highest first): command-line flags, environment variables,
configuration file, defaults.

Example:
    >>> from obsaudit.config import RunConfig
    >>> config = RunConfig.from_env()
    >>> config = RunConfig.from_file("audit.env").merged(seed=7)
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, ClassVar, Dict, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .exceptions import ConfigError

# Load environment variables from .env file if present
load_dotenv()

MAX_ARITY = 28
MAX_DENSE = 14


@dataclass
class Limits:
    """Process-wide caps read by the computational modules."""

    arity_cap: int = MAX_ARITY
    dense_cap: int = MAX_DENSE


LIMITS = Limits()


class RunConfig(BaseModel):
    """
    Configuration for one obsaudit run.

    Attributes:
        dense_cap: log2 of the largest dense matrix dimension (2^14 columns)
        arity_cap: largest truth-table arity n
        seed: seed for every PRNG used by the run
        output_dir: directory receiving reports, artifacts and the cache
        format: output format for command results
        jobs: number of claim groups the audit battery runs in parallel
        use_cache: whether results are read from and written to the cache

    Example:
        >>> config = RunConfig(seed=3, jobs=4)
        >>> config.dense_cap
        14
    """

    dense_cap: int = Field(
        default=MAX_DENSE,
        description="log2 of the dense column cap",
        ge=1,
        le=MAX_DENSE,
    )
    arity_cap: int = Field(
        default=MAX_ARITY, description="Largest truth-table arity", ge=1, le=MAX_ARITY
    )
    seed: int = Field(default=0, description="PRNG seed", ge=0)
    output_dir: str = Field(
        default="obsaudit-out", description="Directory for reports and cache"
    )
    format: str = Field(
        default="table",
        description="Output format for command results",
        pattern=r"^(table|json|csv)$",
    )
    jobs: int = Field(default=1, description="Parallel claim groups", ge=1, le=64)
    use_cache: bool = Field(default=True, description="Use the results cache")

    DEFAULT_CONFIG_PATH: ClassVar[str] = "~/.obsaudit/config.env"
    ENV_PREFIX: ClassVar[str] = "OBSAUDIT_"

    model_config = {"extra": "forbid"}

    @field_validator("output_dir")
    @classmethod
    def validate_output_dir(cls, v: str) -> str:
        """
        Validate that the output directory is not empty.

        Raises:
            ValueError: If the path is empty or whitespace
        """
        if not v or not v.strip():
            raise ValueError("Output directory cannot be empty")
        return v

    @model_validator(mode="after")
    def validate_caps(self) -> "RunConfig":
        """The dense cap cannot exceed the arity cap."""
        if self.dense_cap > self.arity_cap:
            raise ValueError(
                f"dense_cap ({self.dense_cap}) cannot exceed arity_cap ({self.arity_cap})"
            )
        return self

    @classmethod
    def _build(cls, data: Dict[str, Any], source: str) -> "RunConfig":
        try:
            return cls(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration in {source}: {e}")

    @classmethod
    def from_env(cls) -> "RunConfig":
        """
        Create configuration from ``OBSAUDIT_*`` environment variables.

        Unset variables fall back to defaults.

        Raises:
            ConfigError: If a variable holds an invalid value
        """
        data: Dict[str, Any] = {}
        for name in cls.model_fields:
            value = os.getenv(cls.ENV_PREFIX + name.upper())
            if value is not None:
                data[name] = value
        return cls._build(data, "environment")

    @classmethod
    def from_file(cls, config_path: Optional[str] = None) -> "RunConfig":
        """
        Create configuration from a plain ``key = value`` file.

        Args:
            config_path: Path to configuration file. If None, uses default path.

        Raises:
            ConfigError: If the file doesn't exist or holds invalid values
        """
        if config_path is None:
            config_path = os.path.expanduser(cls.DEFAULT_CONFIG_PATH)

        config_file = Path(config_path)
        if not config_file.exists():
            raise ConfigError(f"Configuration file not found: {config_path}")

        values = dotenv_values(config_file)
        data = {k.lower(): v for k, v in values.items() if v is not None}
        return cls._build(data, str(config_file))

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "RunConfig":
        """
        Resolve file and environment sources into one configuration.

        A missing default file is not an error; a missing explicit file is.
        Environment variables override file values.
        """
        data: Dict[str, Any] = {}
        if config_path is not None:
            data.update(cls.from_file(config_path).model_dump(exclude_unset=True))
        else:
            default = Path(os.path.expanduser(cls.DEFAULT_CONFIG_PATH))
            if default.exists():
                data.update(cls.from_file(str(default)).model_dump(exclude_unset=True))
        data.update(cls.from_env().model_dump(exclude_unset=True))
        return cls._build(data, "merged sources")

    def merged(self, **overrides: Any) -> "RunConfig":
        """Return a copy with the non-None overrides applied (flags win)."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return self._build(data, "command-line flags")

    def save_to_file(self, config_path: Optional[str] = None) -> None:
        """
        Save configuration as ``key = value`` lines.

        Raises:
            ConfigError: If the file cannot be written
        """
        if config_path is None:
            config_path = os.path.expanduser(self.DEFAULT_CONFIG_PATH)

        config_file = Path(config_path)
        config_file.parent.mkdir(parents=True, exist_ok=True)

        lines = [f"{key} = {value}" for key, value in self.to_dict().items()]
        try:
            config_file.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Failed to save configuration: {e}")

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert configuration to dictionary.

        Returns:
            Dictionary representation of configuration
        """
        return self.model_dump()


def configure_limits(config: RunConfig) -> None:
    """Push the configuration's caps into :data:`LIMITS`."""
    LIMITS.arity_cap = config.arity_cap
    LIMITS.dense_cap = config.dense_cap
