"""
Tests for scenario runs, sweeps, the narrow-peak sweep and the battery checks.
"""

import math

import pandas as pd
import pytest
import yaml

from src.config import parse_config_text
from src.experiments import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_PARTIAL,
    PEAKS_COLUMNS,
    SWEEP_COLUMNS,
    run_peaks,
    run_scenario,
    run_sweep,
    save_result,
    write_frame,
)
from src.experiments.peaks import flat_reference
from src.experiments.validation import (
    all_passed,
    check_rabi,
    check_term_ratio,
    check_unitarity,
    run_battery,
    run_check,
)

SMALL = """
grid1_halfwidth = 10
grid1_count = 100
grid0_halfwidth = 10
grid0_count = 100
"""


@pytest.fixture
def small_config(tmp_path):
    return parse_config_text(SMALL + f"output = {tmp_path}\n")


def test_run_scenario_and_save(small_config, tmp_path):
    result = run_scenario(small_config)
    assert result.summary_line().startswith("gamma2=1 N=0 predicted=1 fitted=")

    paths = save_result(result, tmp_path)
    frame = pd.read_csv(paths["trajectory"])
    assert list(frame.columns) == ["t", "p2", "p1", "p0", "norm"]
    assert frame["p2"].iloc[0] == 1.0

    with open(paths["report"]) as f:
        report = yaml.safe_load(f)
    assert report["conventions"] == "amplitude rates, hbar=1"
    assert report["fit"]["rate"] == result.report.fit.rate
    assert parse_config_text(report["config"]) == small_config


def test_fit_window_from_config(small_config):
    config = small_config.updated({"fit_t_lo": 1.0, "fit_t_hi": 2.0})
    result = run_scenario(config)
    assert result.report.fit.window == (1.0, 2.0)


def test_sweep_rows_sorted(small_config):
    result = run_sweep(small_config, "v10", [0.5, 0.0])
    assert list(result.frame.columns) == SWEEP_COLUMNS
    assert list(result.frame["sweep_value"]) == [0.0, 0.5]
    assert result.frame["n_factor"].tolist() == pytest.approx([0.0, 0.25])
    assert result.exit_code == EXIT_OK


def test_sweep_partial_failure(small_config):
    result = run_sweep(small_config, "v10", [0.0, -1.0, 0.5])
    assert result.exit_code == EXIT_PARTIAL
    assert list(result.frame["sweep_value"]) == [-1.0, 0.0, 0.5]
    assert math.isnan(result.frame["fitted_rate"].iloc[0])
    assert not result.frame["fitted_rate"].iloc[1:].isna().any()
    assert [value for value, _ in result.failures] == [-1.0]


def test_sweep_total_failure(small_config):
    assert run_sweep(small_config, "v12", [-1.0, -2.0]).exit_code == EXIT_FAILURE


def test_sweep_independent_of_workers(small_config, tmp_path):
    """Serial and parallel sweeps write byte-identical tables"""
    values = [0.5, 0.0, 0.5]
    serial = write_frame(run_sweep(small_config, "v10", values, workers=1).frame,
                         tmp_path / "serial.csv")
    parallel = write_frame(run_sweep(small_config, "v10", values, workers=2).frame,
                           tmp_path / "parallel.csv")
    assert serial.read_bytes() == parallel.read_bytes()


def test_empty_fields_written_blank(small_config, tmp_path):
    path = write_frame(run_sweep(small_config, "v10", [0.0, -1.0]).frame, tmp_path / "s.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert lines[1] == "-1" + "," * (len(SWEEP_COLUMNS) - 1)


def test_peaks_sweep(small_config):
    config = small_config.updated({"v10": "0.5", "peak_widths": "2, 8",
                                   "peak_weight": 20.0 / math.pi})
    result = run_peaks(config)
    frame = result.frame
    assert list(frame.columns) == PEAKS_COLUMNS
    assert frame["peak_width"].tolist()[:2] == [2.0, 8.0]
    assert math.isnan(frame["peak_width"].iloc[-1])
    # the flat reference carries the same weight as the default rho0
    assert flat_reference(config).value == pytest.approx(1.0 / math.pi)
    assert frame["n_factor"].iloc[-1] == pytest.approx(0.25)
    assert len(frame) == 3


def test_unitarity_check_fails_with_coarse_step():
    assert check_unitarity(0.5, None).passed
    result = run_check("unitarity", lambda: check_unitarity(0.5, 0.1))
    assert not result.passed
    assert "time step too large" in result.detail


def test_term_ratio_check_without_v10():
    result = check_term_ratio(0.0)
    assert result.passed
    assert "T1/T0 = 0" in result.detail


def test_rabi_check():
    assert check_rabi(None).passed


def test_peaks_wide_width_reproduces_flat_rate(small_config):
    """A Lorentzian much wider than the 0-band acts as the flat density"""
    config = small_config.updated({"v10": "0.5", "peak_widths": "200",
                                   "peak_weight": 20.0 / math.pi})
    frame = run_peaks(config).frame
    wide, flat = frame["fitted_rate"].iloc[0], frame["fitted_rate"].iloc[-1]
    assert frame["peak_width"].iloc[0] == 200.0
    assert wide == pytest.approx(flat, rel=0.10)


def test_default_battery_passes():
    """Every built-in check passes at the default coupling, no dt override"""
    results = run_battery(0.5, environ={})
    assert [r.name for r in results] == ["unitarity", "rabi pair", "golden rule",
                                         "term ratio", "consistency triangle"]
    assert all_passed(results), [f"{r.name}: {r.detail}" for r in results if not r.passed]
