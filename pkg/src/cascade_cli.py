#!/usr/bin/env python3
"""
Cascade Zeno CLI
================

Command-line interface for the cascade decay simulator.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config.scenario_config import (
    SWEEP_KEYS,
    ScenarioConfig,
    apply_environment,
    environment_workers,
    load_config,
)
from src.errors import CascadeError
from src.experiments.peaks import PEAKS_FILE, PEAKS_HEADER, run_peaks
from src.experiments.simulation import run_scenario, save_result, write_frame
from src.experiments.sweep import EXIT_FAILURE, EXIT_OK, SweepResult, run_sweep
from src.experiments.validation import all_passed, render, run_battery

logger = logging.getLogger("cascade_zeno")


def setup_logging(verbose: bool = False, log_file: Optional[str] = None):
    """Setup logging configuration"""
    level = logging.DEBUG if verbose else logging.INFO
    handlers: List[logging.Handler] = [
        RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=verbose)
    ]
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        handlers.append(file_handler)
    logging.basicConfig(level=level, format='%(message)s', handlers=handlers, force=True)


def parse_values(text: str) -> List[float]:
    """Comma-separated sweep values."""
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse sweep values '{text}'")
    if len(values) < 2:
        raise argparse.ArgumentTypeError("a sweep needs at least 2 values")
    return values


def resolve_config(args) -> ScenarioConfig:
    """Scenario file, then --override, then the environment hooks."""
    config = load_config(args.config).with_overrides(args.override)
    return apply_environment(config)


def resolve_workers(args, config: ScenarioConfig) -> int:
    return args.workers or environment_workers() or config.workers


def cmd_simulate(args) -> int:
    config = resolve_config(args)
    result = run_scenario(config)
    save_result(result, config.output)
    print(result.summary_line())
    return EXIT_OK


def _finish_sweep(result: SweepResult, path: Path, header: str = "") -> int:
    write_frame(result.frame, path, header)
    logger.info(f"Wrote {len(result.frame)} rows to {path}")
    for value, message in result.failures:
        print(f"sweep point {value!r} failed: {message}", file=sys.stderr)
    return result.exit_code


def cmd_sweep(args) -> int:
    config = resolve_config(args)
    result = run_sweep(config, args.key, args.values, resolve_workers(args, config))
    return _finish_sweep(result, Path(config.output) / f"sweep_{args.key}.csv")


def cmd_peaks(args) -> int:
    config = resolve_config(args)
    result = run_peaks(config, resolve_workers(args, config))
    return _finish_sweep(result, Path(config.output) / PEAKS_FILE, PEAKS_HEADER)


def cmd_validate(args) -> int:
    results = run_battery(args.zeno_coupling)
    render(results)
    return EXIT_OK if all_passed(results) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascade-zeno",
        description="Cascade decay simulator - Zeno suppression of the 2 -> 1 rate",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Golden-rule reference scenario
  cascade-zeno simulate data/golden_rule.cfg

  # Zeno suppression sweep over the 1 -> 0 coupling
  cascade-zeno --workers 4 sweep data/zeno_sweep.cfg --key v10 --values 0,0.5,0.7071,0.866,1

  # Built-in verification battery
  cascade-zeno validate

  # Exploratory narrow-peak sweep
  cascade-zeno peaks data/narrow_peaks.cfg
        """
    )
    parser.add_argument("--workers", type=int, help="Worker processes for sweeps")
    parser.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                        help="Override a config key (repeatable)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    parser.add_argument("--log-file", help="Also write the log to this file")

    subparsers = parser.add_subparsers(dest="command", required=True)

    simulate = subparsers.add_parser("simulate", help="Simulate one scenario")
    simulate.add_argument("config", help="Scenario config file")
    simulate.set_defaults(handler=cmd_simulate)

    sweep = subparsers.add_parser("sweep", help="Sweep one profile level")
    sweep.add_argument("config", help="Scenario config file")
    sweep.add_argument("--key", required=True, choices=SWEEP_KEYS, help="Profile to sweep")
    sweep.add_argument("--values", required=True, type=parse_values,
                       help="Comma-separated values, at least two")
    sweep.set_defaults(handler=cmd_sweep)

    validate = subparsers.add_parser("validate", help="Run the verification battery")
    validate.add_argument("--zeno-coupling", type=float, default=0.5,
                          help="V10 used by the battery (0 runs the uncoupled subset)")
    validate.set_defaults(handler=cmd_validate)

    peaks = subparsers.add_parser("peaks", help="Exploratory narrow-peak rho0 sweep")
    peaks.add_argument("config", help="Scenario config file with peak_widths")
    peaks.set_defaults(handler=cmd_peaks)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI function"""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be >= 1")
    setup_logging(args.verbose, args.log_file)

    try:
        return args.handler(args)
    except CascadeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
