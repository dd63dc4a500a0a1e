"""
Experiments Package
===================

Scenario runs, parameter sweeps, the exploratory narrow-peak sweep and the
verification battery behind the command-line tool.
"""

from .peaks import PEAKS_COLUMNS, PEAKS_FILE, PEAKS_HEADER, run_peaks
from .simulation import (
    REPORT_FILE,
    TRAJECTORY_FILE,
    ScenarioResult,
    run_scenario,
    save_result,
    write_frame,
    write_report,
)
from .sweep import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_PARTIAL,
    SWEEP_COLUMNS,
    SweepResult,
    run_point,
    run_sweep,
)
from .validation import CheckResult, all_passed, render, run_battery

__all__ = [
    'CheckResult',
    'EXIT_FAILURE',
    'EXIT_OK',
    'EXIT_PARTIAL',
    'PEAKS_COLUMNS',
    'PEAKS_FILE',
    'PEAKS_HEADER',
    'REPORT_FILE',
    'SWEEP_COLUMNS',
    'ScenarioResult',
    'SweepResult',
    'TRAJECTORY_FILE',
    'all_passed',
    'render',
    'run_battery',
    'run_peaks',
    'run_point',
    'run_scenario',
    'run_sweep',
    'save_result',
    'write_frame',
    'write_report',
]
