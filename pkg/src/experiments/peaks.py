"""
Narrow-Peak Sweep (exploratory)
===============================

Replaces rho0 by Lorentzian peaks of decreasing width that all carry the
same weight over the 0-band, and records how the fitted rate moves away
from the flat-density result. No pass/fail: the trend is only recorded.
"""

import logging
import math
from typing import List, Optional, Tuple

from ..config.scenario_config import ScenarioConfig
from ..errors import CascadeError, ConfigError
from ..model.models import CouplingProfile, ProfileKind
from .sweep import SWEEP_COLUMNS, SweepResult, assemble, empty_row, execute_points

logger = logging.getLogger(__name__)

PEAKS_FILE = "peaks.csv"
PEAKS_COLUMNS = SWEEP_COLUMNS + ['peak_width']
PEAKS_HEADER = ("EXPLORATORY narrow-peak rho0 sweep at fixed peak-integrated weight; "
                "trend recorded, not asserted. Empty peak_width marks the flat reference.")


def peak_center(config: ScenarioConfig) -> float:
    profile = config.profile("rho0")
    if profile.kind is ProfileKind.LORENTZIAN:
        return profile.center
    return config.e2


def flat_reference(config: ScenarioConfig) -> CouplingProfile:
    """Flat rho0 with the same integral over the 0-band."""
    band = config.to_cascade_spec().grid0
    return CouplingProfile.flat(config.peak_weight / (band.upper - band.lower))


def run_peaks(config: ScenarioConfig, workers: Optional[int] = None) -> SweepResult:
    """One run per entry of ``peak_widths`` plus the flat reference."""
    if not config.peak_widths:
        raise ConfigError("peaks needs a non-empty peak_widths list")
    workers = workers or config.workers
    band = config.to_cascade_spec().grid0
    center = peak_center(config)

    candidates = [(width, CouplingProfile.lorentzian_with_weight(
        center, width, config.peak_weight, band)) for width in config.peak_widths]
    candidates.append((math.nan, flat_reference(config)))

    points: List[Tuple[float, ScenarioConfig]] = []
    widths: List[float] = []
    rows = []
    invalid = []
    for width, profile in candidates:
        if width < 2.0 * band.spacing:
            logger.warning(f"Peak width {width:.4g} is below two 0-band spacings "
                           f"({band.spacing:.4g}); the peak is under-resolved")
        try:
            point = config.updated({'rho0': profile.to_text()}, source=f"peak width {width!r}")
        except CascadeError as e:
            rows.append(dict(empty_row(profile.level), peak_width=width))
            invalid.append((profile.level, str(e)))
            continue
        points.append((profile.level, point))
        widths.append(width)

    logger.info(f"Exploratory peak sweep over {len(config.peak_widths)} widths")
    for width, row in zip(widths, execute_points(points, workers)):
        row['peak_width'] = width
        rows.append(row)

    return assemble(rows, invalid, columns=PEAKS_COLUMNS, sort_by='peak_width')
