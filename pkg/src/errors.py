"""
Error Types
===========

Exception hierarchy shared by every package. Invalid inputs derive from
ValueError, numerical failures from RuntimeError.
"""

from typing import Any, Dict, Optional


class CascadeError(Exception):
    """Base class for all simulator errors."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        if not self.diagnostics:
            return self.message
        details = ", ".join(f"{key}={value}" for key, value in self.diagnostics.items())
        return f"{self.message} ({details})"


class SpecValidationError(CascadeError, ValueError):
    """Invalid grid, profile, spec or discrete model."""


class DimensionMismatchError(CascadeError, ValueError):
    """State vector does not match the model it is evolved with."""


class StepSizeError(CascadeError, ValueError):
    """Time step too large to resolve the interaction-picture phases."""


class RecurrenceWindowError(CascadeError, ValueError):
    """Requested time span reaches into the recurrence of the finite model."""


class NormDriftError(CascadeError, RuntimeError):
    """Total norm drifted beyond the configured tolerance."""


class QuadratureResolutionError(CascadeError, ValueError):
    """Time sub-grid too coarse for the fastest phase."""


class TermUnderflowError(CascadeError, RuntimeError):
    """Previous series term below the numerical floor."""


class SeriesConvergenceError(CascadeError, RuntimeError):
    """Fixed-point iteration for the resummed rate did not converge."""


class FitError(CascadeError, RuntimeError):
    """Decay-rate extraction failed."""


class NonPositivePopulationError(FitError):
    """Survival probability reached zero inside the fit window."""


class NonExponentialWindowError(FitError):
    """Log-linear fit quality below the acceptance threshold."""


class ConstantTrajectoryError(FitError):
    """Survival probability does not decay at all."""

    def __init__(self, message: str = "constant trajectory",
                 diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message, diagnostics)


class ConfigError(CascadeError, ValueError):
    """Scenario configuration could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None,
                 source: Optional[str] = None):
        location = ""
        if source and line:
            location = f"{source}:{line}: "
        elif line:
            location = f"line {line}: "
        elif source:
            location = f"{source}: "
        super().__init__(f"{location}{message}")
        self.line = line
        self.source = source
