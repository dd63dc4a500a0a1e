"""
Configuration Package
=====================

Scenario files, command-line overrides and environment hooks.
"""

from .scenario_config import (
    DT_OVERRIDE_ENV,
    PROFILE_KEYS,
    SWEEP_KEYS,
    WORKERS_ENV,
    ScenarioConfig,
    apply_environment,
    environment_workers,
    load_config,
    parse_config_text,
    parse_profile,
    save_config,
)

__all__ = [
    'DT_OVERRIDE_ENV',
    'PROFILE_KEYS',
    'SWEEP_KEYS',
    'WORKERS_ENV',
    'ScenarioConfig',
    'apply_environment',
    'environment_workers',
    'load_config',
    'parse_config_text',
    'parse_profile',
    'save_config',
]
