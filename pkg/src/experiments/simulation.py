"""
Single-Scenario Runs
====================

Simulates one ScenarioConfig, compares the fitted rate with the prediction
and writes the trajectory table and the YAML report.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Union

import pandas as pd
import yaml

from ..analysis.comparison import compare, simulate_spec
from ..analysis.models import RateReport
from ..config.scenario_config import ScenarioConfig
from ..dynamics.models import Trajectory

logger = logging.getLogger(__name__)

TRAJECTORY_FILE = "trajectory.csv"
REPORT_FILE = "report.yaml"

CSV_OPTIONS: Dict[str, Any] = {
    'index': False,
    'float_format': "%.17g",
    'na_rep': "",
    'lineterminator': "\n",
}


@dataclass(frozen=True)
class ScenarioResult:
    """Trajectory and report of one run."""
    config: ScenarioConfig
    trajectory: Trajectory
    report: RateReport

    def summary_line(self) -> str:
        prediction = self.report.prediction
        return (f"gamma2={prediction.gamma2:.6g} N={prediction.n_factor:.6g} "
                f"predicted={prediction.gamma2_modified:.6g} "
                f"fitted={self.report.fit.rate:.6g} "
                f"rel_err={self.report.relative_error:.4g}")


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    """Simulate ``config`` and compare against the closed-form rates."""
    spec = config.to_cascade_spec()
    trajectory = simulate_spec(
        spec,
        t_max=config.t_max,
        dt=config.dt,
        sample_every=config.sample_every,
        norm_tolerance=config.norm_tolerance,
        allow_recurrence=config.allow_recurrence,
    )
    report = compare(spec, trajectory, window=_window(config, trajectory))
    return ScenarioResult(config=config, trajectory=trajectory, report=report)


def _window(config: ScenarioConfig, trajectory: Trajectory):
    window = config.fit_window
    if window is None:
        return None
    t_first, t_last = trajectory.span
    lo = window[0] if window[0] is not None else t_first
    hi = window[1] if window[1] is not None else min(t_last, 0.5 * trajectory.recurrence_time)
    return lo, hi


def write_frame(frame: pd.DataFrame, path: Union[str, Path], header: str = "") -> Path:
    """Write ``frame`` as CSV with 17 significant digits and an optional comment line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        if header:
            f.write(f"# {header}\n")
        frame.to_csv(f, **CSV_OPTIONS)
    return path


def write_report(result: ScenarioResult, path: Union[str, Path]) -> Path:
    """YAML report with the full RateReport and the echoed config."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = result.report.to_dict()
    document['config'] = result.config.to_text()
    with open(path, 'w', encoding='utf-8') as f:
        yaml.safe_dump(document, f, sort_keys=False, default_flow_style=False)
    return path


def save_result(result: ScenarioResult, output_dir: Union[str, Path]) -> Dict[str, Path]:
    """Write ``trajectory.csv`` and ``report.yaml`` under ``output_dir``."""
    output_dir = Path(output_dir)
    paths = {
        'trajectory': write_frame(result.trajectory.to_frame(), output_dir / TRAJECTORY_FILE),
        'report': write_report(result, output_dir / REPORT_FILE),
    }
    logger.info(f"Results saved to {output_dir}")
    return paths
