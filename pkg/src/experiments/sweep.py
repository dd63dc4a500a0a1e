"""
Parameter Sweeps
================

Runs one scenario per sweep value, in worker processes when more than one
worker is requested. Rows are gathered after all points finish and sorted by
sweep value, so the table does not depend on completion order or worker count.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from ..config.scenario_config import ScenarioConfig
from ..errors import CascadeError
from ..model.rates import predict_rates
from .simulation import run_scenario

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['sweep_value', 'n_factor', 'gamma2', 'predicted_rate', 'fitted_rate',
                 'rel_err', 'r_squared']

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARTIAL = 3


@dataclass
class SweepResult:
    """Sorted sweep table plus the error text of every failed point."""
    frame: pd.DataFrame
    failures: List[Tuple[float, str]] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if not self.failures:
            return EXIT_OK
        if len(self.failures) >= len(self.frame):
            return EXIT_FAILURE
        return EXIT_PARTIAL


def empty_row(value: float) -> Dict[str, Any]:
    row = {column: math.nan for column in SWEEP_COLUMNS}
    row['sweep_value'] = value
    return row


def run_point(value: float, config: ScenarioConfig) -> Dict[str, Any]:
    """
    Simulate one sweep point.

    Returns a row dict; on failure the fitted fields stay empty and the key
    ``error`` carries the message.
    """
    row = empty_row(value)
    try:
        prediction = predict_rates(config.to_cascade_spec())
        row.update(n_factor=prediction.n_factor, gamma2=prediction.gamma2,
                   predicted_rate=prediction.gamma2_modified)
        result = run_scenario(config)
    except CascadeError as e:
        row['error'] = str(e)
        return row

    row.update(fitted_rate=result.report.fit.rate,
               rel_err=result.report.relative_error,
               r_squared=result.report.fit.r_squared)
    return row


def execute_points(points: Sequence[Tuple[float, ScenarioConfig]],
                   workers: int) -> List[Dict[str, Any]]:
    """Run every point; rows come back in the order of ``points``."""
    if workers <= 1 or len(points) <= 1:
        rows = []
        for index, (value, config) in enumerate(points, start=1):
            logger.info(f"Sweep point {index}/{len(points)}: {value!r}")
            rows.append(run_point(value, config))
        return rows

    with ProcessPoolExecutor(max_workers=min(workers, len(points))) as executor:
        futures = [executor.submit(run_point, value, config) for value, config in points]
        values = {future: value for future, (value, _) in zip(futures, points)}
        for future in as_completed(futures):
            logger.info(f"Sweep point {values[future]!r} finished")
        return [future.result() for future in futures]


def assemble(rows: List[Dict[str, Any]], invalid: List[Tuple[float, str]],
             columns: Sequence[str] = SWEEP_COLUMNS,
             sort_by: str = 'sweep_value') -> SweepResult:
    """Join point rows into the sorted table."""
    failures = list(invalid)
    for row in rows:
        if 'error' in row:
            failures.append((row['sweep_value'], row.pop('error')))
    for value, message in failures:
        logger.error(f"Sweep point {value!r} failed: {message}")

    frame = pd.DataFrame(rows, columns=list(columns))
    frame = frame.sort_values(sort_by, kind='mergesort', na_position='last')
    return SweepResult(frame=frame.reset_index(drop=True), failures=failures)


def run_sweep(config: ScenarioConfig, key: str, values: Sequence[float],
              workers: Optional[int] = None) -> SweepResult:
    """Sweep the level of profile ``key`` over ``values``."""
    if len(values) < 2:
        raise ValueError("a sweep needs at least 2 values")
    workers = workers or config.workers

    points: List[Tuple[float, ScenarioConfig]] = []
    rows: List[Dict[str, Any]] = []
    invalid: List[Tuple[float, str]] = []
    for value in values:
        try:
            points.append((float(value), config.with_sweep(key, value)))
        except CascadeError as e:
            rows.append(empty_row(float(value)))
            invalid.append((float(value), str(e)))

    logger.info(f"Sweeping {key} over {len(values)} values with {workers} worker(s)")
    rows.extend(execute_points(points, workers))
    return assemble(rows, invalid)
