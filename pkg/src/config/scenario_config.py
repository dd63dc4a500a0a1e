"""
Scenario Configuration
======================

Line-oriented ``key = value`` scenario files, ``#`` comments, no sections.
Every key maps onto a CascadeSpec field or a run control; unknown keys are
rejected with the offending line number.
"""

import logging
import math
import os
import re
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from ..errors import ConfigError, SpecValidationError
from ..model.models import CascadeSpec, CouplingProfile, EnergyGrid

logger = logging.getLogger(__name__)

DT_OVERRIDE_ENV = "CASCADE_ZENO_DT_OVERRIDE"
WORKERS_ENV = "CASCADE_ZENO_WORKERS"

PROFILE_KEYS = ("rho1", "rho0", "v12", "v10")
SWEEP_KEYS = PROFILE_KEYS

_CALL = re.compile(r"^(\w+)\s*\((.*)\)$")


def parse_profile(text: Union[str, float, CouplingProfile]) -> CouplingProfile:
    """
    Parse profile text.

    Accepted forms: a bare number or ``flat(v)``; ``lorentzian(center=c,
    width=w, peak=p)``; ``table(e1:v1, e2:v2, ...)``.
    """
    if isinstance(text, CouplingProfile):
        return text
    if isinstance(text, (int, float)):
        return CouplingProfile.flat(float(text))

    source = str(text).strip()
    try:
        return CouplingProfile.flat(float(source))
    except ValueError:
        pass

    match = _CALL.match(source)
    if not match:
        raise SpecValidationError(f"cannot parse profile '{source}'")
    kind, body = match.group(1).lower(), match.group(2).strip()

    try:
        if kind == "flat":
            return CouplingProfile.flat(float(body))
        if kind == "lorentzian":
            arguments = {}
            for item in filter(None, (part.strip() for part in body.split(","))):
                name, _, value = item.partition("=")
                arguments[name.strip()] = float(value)
            missing = {"center", "width", "peak"} - set(arguments)
            if missing or len(arguments) != 3:
                raise SpecValidationError(
                    "lorentzian needs exactly center=, width= and peak=")
            return CouplingProfile.lorentzian(**arguments)
        if kind == "table":
            pairs = []
            for item in filter(None, (part.strip() for part in body.split(","))):
                energy, _, value = item.partition(":")
                pairs.append((float(energy), float(value)))
            return CouplingProfile.tabulated(pairs)
    except ValueError as e:
        if isinstance(e, SpecValidationError):
            raise
        raise SpecValidationError(f"cannot parse profile '{source}': {e}")

    raise SpecValidationError(f"unknown profile kind '{kind}'")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ", ".join(_format_value(item) for item in value)
    return str(value)


class ScenarioConfig(BaseModel):
    """One simulation scenario: the cascade spec plus run controls."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Level 2 and the two continua
    e2: float = 0.0
    grid1_center: float = 0.0
    grid1_halfwidth: float = 20.0
    grid1_count: int = 400
    grid0_center: float = 0.0
    grid0_halfwidth: float = 20.0
    grid0_count: int = 400

    # Profiles in their canonical text form
    rho1: str = CouplingProfile.flat(1.0 / math.pi).to_text()
    rho0: str = CouplingProfile.flat(1.0 / math.pi).to_text()
    v12: str = CouplingProfile.flat(1.0).to_text()
    v10: str = CouplingProfile.flat(0.0).to_text()

    # Run controls
    t_max: Optional[float] = None
    dt: Optional[float] = None
    sample_every: int = 10
    fit_t_lo: Optional[float] = None
    fit_t_hi: Optional[float] = None
    norm_tolerance: float = 1e-6
    allow_recurrence: bool = False
    output: str = "output"
    workers: int = 1

    # Narrow-peak sweep
    peak_widths: Tuple[float, ...] = ()
    peak_weight: float = 1.0

    @field_validator("rho1", "rho0", "v12", "v10", mode="before")
    @classmethod
    def _canonical_profile(cls, value):
        return parse_profile(value).to_text()

    @field_validator("peak_widths", mode="before")
    @classmethod
    def _split_widths(cls, value):
        if isinstance(value, str):
            return tuple(float(item) for item in value.split(",") if item.strip())
        return value

    @field_validator("t_max", "dt", "fit_t_lo", "fit_t_hi", mode="before")
    @classmethod
    def _optional_number(cls, value):
        if isinstance(value, str) and value.strip().lower() in ("", "none", "auto"):
            return None
        return value

    @field_validator("t_max", "dt", "norm_tolerance", "peak_weight")
    @classmethod
    def _positive(cls, value):
        if value is not None and not value > 0:
            raise ValueError("must be positive")
        return value

    @field_validator("sample_every", "workers")
    @classmethod
    def _at_least_one(cls, value):
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("peak_widths")
    @classmethod
    def _positive_widths(cls, value):
        if any(not width > 0 for width in value):
            raise ValueError("peak widths must be positive")
        return value

    @model_validator(mode="after")
    def _valid_spec(self):
        if self.fit_t_lo is not None and self.fit_t_hi is not None:
            if not self.fit_t_lo < self.fit_t_hi:
                raise ValueError("fit_t_lo must be below fit_t_hi")
        self.to_cascade_spec()
        return self

    @property
    def fit_window(self) -> Optional[Tuple[float, float]]:
        if self.fit_t_lo is None and self.fit_t_hi is None:
            return None
        return self.fit_t_lo, self.fit_t_hi

    def profile(self, name: str) -> CouplingProfile:
        if name not in PROFILE_KEYS:
            raise ConfigError(f"unknown profile key {name}")
        return parse_profile(getattr(self, name))

    def to_cascade_spec(self) -> CascadeSpec:
        return CascadeSpec(
            e2=self.e2,
            grid1=EnergyGrid(self.grid1_center, self.grid1_halfwidth, self.grid1_count),
            grid0=EnergyGrid(self.grid0_center, self.grid0_halfwidth, self.grid0_count),
            rho1=self.profile("rho1"),
            rho0=self.profile("rho0"),
            v12=self.profile("v12"),
            v10=self.profile("v10"),
        )

    def to_text(self) -> str:
        """Echo as config text; parses back to an equal config."""
        lines = ["# cascade-zeno scenario"]
        for name in type(self).model_fields:
            value = getattr(self, name)
            if value is None or value == ():
                continue
            lines.append(f"{name} = {_format_value(value)}")
        return "\n".join(lines) + "\n"

    def updated(self, values: Mapping[str, object], source: str = "override") -> "ScenarioConfig":
        """Copy with ``values`` replaced and the whole config revalidated."""
        for key in values:
            if key not in type(self).model_fields:
                raise ConfigError(f"unknown key {key}", source=source)
        try:
            return type(self).model_validate({**self.model_dump(), **values})
        except ValidationError as e:
            raise _config_error(e, {}, source) from None

    def with_overrides(self, overrides: Iterable[str]) -> "ScenarioConfig":
        """Apply ``key=value`` strings as given on the command line."""
        values: Dict[str, str] = {}
        for override in overrides:
            key, sep, value = override.partition("=")
            if not sep:
                raise ConfigError(f"override '{override}' is not key=value", source="--override")
            values[key.strip()] = value.strip()
        if not values:
            return self
        return self.updated(values, source="--override")

    def with_sweep(self, key: str, value: float) -> "ScenarioConfig":
        """Copy with the level of profile ``key`` (flat value or peak) set to ``value``."""
        if key not in SWEEP_KEYS:
            raise ConfigError(f"cannot sweep {key}; choose one of {', '.join(SWEEP_KEYS)}")
        source = f"sweep {key}={value!r}"
        try:
            profile = self.profile(key).scaled_to(value)
        except SpecValidationError as e:
            raise ConfigError(str(e), source=source) from None
        return self.updated({key: profile.to_text()}, source=source)


def _config_error(error: ValidationError, lines: Mapping[str, int],
                  source: Optional[str]) -> ConfigError:
    first = error.errors()[0]
    location = first.get("loc") or ()
    key = str(location[0]) if location else None
    message = first.get("msg", "invalid value")
    if key:
        message = f"{key}: {message}"
    return ConfigError(message, line=lines.get(key), source=source)


def parse_config_text(text: str, source: Optional[str] = None) -> ScenarioConfig:
    """Parse ``key = value`` lines into a validated ScenarioConfig."""
    values: Dict[str, str] = {}
    lines: Dict[str, int] = {}
    known = ScenarioConfig.model_fields

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"expected 'key = value', got '{line}'", number, source)
        if key not in known:
            raise ConfigError(f"unknown key {key}", number, source)
        if key in values:
            raise ConfigError(f"duplicate key {key} (first set on line {lines[key]})",
                              number, source)
        values[key] = value.strip()
        lines[key] = number

    try:
        return ScenarioConfig.model_validate(values)
    except ValidationError as e:
        raise _config_error(e, lines, source) from None


def load_config(config_path: Union[str, Path]) -> ScenarioConfig:
    """Load a scenario file."""
    path = Path(config_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config: {e.strerror or e}", source=str(path))
    config = parse_config_text(text, source=str(path))
    logger.debug(f"Loaded scenario from {path}")
    return config


def save_config(config: ScenarioConfig, config_path: Union[str, Path]) -> None:
    """Write ``config`` as scenario text."""
    path = Path(config_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(config.to_text(), encoding="utf-8")


def apply_environment(config: ScenarioConfig,
                      environ: Optional[Mapping[str, str]] = None) -> ScenarioConfig:
    """Apply the dt override hook from the environment (testing only, unstable)."""
    environ = os.environ if environ is None else environ
    raw = environ.get(DT_OVERRIDE_ENV)
    if not raw:
        return config
    logger.warning(f"{DT_OVERRIDE_ENV}={raw} replaces the configured time step")
    return config.updated({"dt": raw}, source=DT_OVERRIDE_ENV)


def environment_workers(environ: Optional[Mapping[str, str]] = None) -> Optional[int]:
    """Worker count from the environment, if set."""
    environ = os.environ if environ is None else environ
    raw = environ.get(WORKERS_ENV)
    if not raw:
        return None
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got '{raw}'")
    if workers < 1:
        raise ConfigError(f"{WORKERS_ENV} must be >= 1")
    return workers
