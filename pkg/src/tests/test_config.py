"""
Tests for scenario files, overrides and environment hooks.
"""

import math
from pathlib import Path

import pytest

from src.config import (
    DT_OVERRIDE_ENV,
    WORKERS_ENV,
    ScenarioConfig,
    apply_environment,
    environment_workers,
    load_config,
    parse_config_text,
    parse_profile,
    save_config,
)
from src.errors import ConfigError, SpecValidationError
from src.model import CouplingProfile, ProfileKind

DATA_DIR = Path(__file__).resolve().parents[2] / "data"

SCENARIO = """
# golden-rule reference
e2 = 0
grid1_halfwidth = 20   # band 1
grid1_count = 400
v10 = flat(0.5)
rho0 = lorentzian(center=0.0, width=2.0, peak=0.3)
t_max = 3
peak_widths = 0.5, 1, 2
"""


def test_defaults():
    config = ScenarioConfig()
    spec = config.to_cascade_spec()
    assert spec.rho1(0.0) == pytest.approx(1.0 / math.pi)
    assert spec.v10.value == 0.0
    assert config.sample_every == 10
    assert config.output == "output"
    assert config.fit_window is None


def test_parse_scenario():
    config = parse_config_text(SCENARIO)
    assert config.grid1_count == 400
    assert config.t_max == 3.0
    assert config.peak_widths == (0.5, 1.0, 2.0)
    assert config.profile("v10") == CouplingProfile.flat(0.5)
    assert config.profile("rho0").kind is ProfileKind.LORENTZIAN


@pytest.mark.parametrize("text,expected", [
    ("0.25", CouplingProfile.flat(0.25)),
    ("flat(2)", CouplingProfile.flat(2.0)),
    ("lorentzian(peak=1, center=0.5, width=2)", CouplingProfile.lorentzian(0.5, 2.0, 1.0)),
    ("table(0:1, 1:3)", CouplingProfile.tabulated([(0.0, 1.0), (1.0, 3.0)])),
])
def test_parse_profile(text, expected):
    assert parse_profile(text) == expected
    assert parse_profile(expected.to_text()) == expected


@pytest.mark.parametrize("text", ["gauss(1)", "lorentzian(center=0, width=1)", "flat(x)",
                                  "table(0:1)"])
def test_parse_profile_rejects(text):
    with pytest.raises(SpecValidationError):
        parse_profile(text)


def test_unknown_key_reports_line():
    with pytest.raises(ConfigError, match="unknown key vv12") as info:
        parse_config_text("e2 = 0\n\nvv12=1\n", source="bad.cfg")
    assert info.value.line == 3
    assert str(info.value).startswith("bad.cfg:3:")


def test_invalid_value_reports_line():
    with pytest.raises(ConfigError) as info:
        parse_config_text("grid0_count = 400\nsample_every = 0\n")
    assert info.value.line == 2
    assert "sample_every" in str(info.value)


@pytest.mark.parametrize("text", [
    "e2 = 50",
    "v12 = -1",
    "grid1_count = 1",
    "e2\n",
    "e2 = 0\ne2 = 1\n",
    "fit_t_lo = 2\nfit_t_hi = 1\n",
])
def test_invalid_scenarios(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_round_trip(tmp_path):
    config = parse_config_text(SCENARIO).updated({"v12": "flat(0.1)", "fit_t_lo": 0.3})
    path = tmp_path / "echo.cfg"
    save_config(config, path)
    assert load_config(path) == config
    assert parse_config_text(config.to_text()) == config


def test_overrides():
    config = ScenarioConfig().with_overrides(["v10=0.5", "grid1_count = 800"])
    assert config.profile("v10").value == 0.5
    assert config.grid1_count == 800
    with pytest.raises(ConfigError, match="unknown key"):
        ScenarioConfig().with_overrides(["bogus=1"])
    with pytest.raises(ConfigError):
        ScenarioConfig().with_overrides(["v10"])


def test_with_sweep():
    config = parse_config_text(SCENARIO)
    assert config.with_sweep("v10", 0.75).profile("v10").value == 0.75
    assert config.with_sweep("rho0", 0.1).profile("rho0").peak == 0.1
    with pytest.raises(ConfigError):
        config.with_sweep("e2", 1.0)
    with pytest.raises(ConfigError):
        config.with_sweep("v10", -1.0)


def test_environment_hooks():
    config = apply_environment(ScenarioConfig(), {DT_OVERRIDE_ENV: "0.001"})
    assert config.dt == 0.001
    assert apply_environment(ScenarioConfig(), {}) == ScenarioConfig()
    assert environment_workers({WORKERS_ENV: "4"}) == 4
    assert environment_workers({}) is None
    with pytest.raises(ConfigError):
        environment_workers({WORKERS_ENV: "many"})


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.cfg")


@pytest.mark.parametrize("name", ["golden_rule.cfg", "zeno_sweep.cfg", "narrow_peaks.cfg"])
def test_shipped_scenarios_parse(name):
    config = load_config(DATA_DIR / name)
    assert config.to_cascade_spec().e2 == 0.0
