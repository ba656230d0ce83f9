# scripts/cli.py
"""Command-line front end.

Usage:
    python -m scripts.cli simulate    --schedule qf --alpha1 0.4pi --alpha2 0.43pi --steps 10000
    python -m scripts.cli pattern     --schedule qf --alpha1 0.4pi --alpha2 0.45pi --steps 10000
    python -m scripts.cli sensitivity --schedule qf --alpha1 0.4pi --alpha2 0.43pi --perturb initial:0.001
    python -m scripts.cli sequence    --schedule tm --steps 64 --out data/tm.csv
    python -m scripts.cli verify

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
"""
import argparse
import dataclasses
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from config import (ALPHA_1, DEFAULT_RECORD_EVERY, DEFAULT_REDUCTION, DEFAULT_STEPS, EXP_THRESHOLD,
                    FLAT_THRESHOLD, LOG_LEVEL, OUTPUT_DIR, PATTERN_TOLERANCE, SATURATION_THRESHOLD)
from scripts.lib.analytic import ORACLE_COLUMNS, analytic_trajectory, branch_weights, oracle_records
from scripts.lib.errors import ConfigError, SimulationError
from scripts.lib.io_utils import FORMATS, SCHEDULE_COLUMNS, read_sidecar, write_letters, write_records, write_sidecar
from scripts.lib.patterns import PATTERN_COLUMNS, distinct_points, simulate_pattern
from scripts.lib.quantum_core import SPIN_STATES, TRAJECTORY_COLUMNS, bloch_path, bloch_record, evolve, initial_state
from scripts.lib.sensitivity import (SENSITIVITY_COLUMNS, PerturbationSpec, RunConfig, classify_growth,
                                     run_experiment)
from scripts.lib.substitution import REDUCTIONS, rotations_needed, schedule_from_name
from scripts.lib.verification import count_results, run_verification_suite

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

COMMANDS = ("simulate", "pattern", "sensitivity", "sequence", "verify")
SCHEDULE_NAMES = ("regular", "qf", "tm", "pd", "cf")
VERIFY_COLUMNS = ["name", "passed", "detail"]
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_IO = 3


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad input; here bad input is a ConfigError (exit 1)."""

    def error(self, message):
        raise ConfigError(message)


def parse_angle(token) -> float:
    """
    Decimal radians or ``<x>pi`` (``0.4pi``, ``pi``, ``-0.001pi``).

    Raises:
        ConfigError: naming the offending token.
    """
    if isinstance(token, (int, float)) and not isinstance(token, bool):
        value = float(token)
    else:
        text = str(token).strip().lower()
        try:
            if text.endswith("pi"):
                coefficient = text[:-2].rstrip("*")
                if coefficient in ("", "+", "-"):
                    coefficient += "1"
                value = float(coefficient) * math.pi
            else:
                value = float(text)
        except ValueError:
            raise ConfigError(f"Malformed angle '{token}'. Use decimal radians or '<x>pi'.") from None
    if not math.isfinite(value):
        raise ConfigError(f"Angle '{token}' is not finite.")
    return value


def parse_perturbation(token: str) -> PerturbationSpec:
    """``initial:<delta>`` or ``params:<d1>,<d2>``."""
    kind, sep, rest = str(token).partition(":")
    if not sep or not rest:
        raise ConfigError(f"Malformed perturbation '{token}'. Use 'initial:<delta>' or 'params:<d1>,<d2>'.")
    if kind == "initial":
        return PerturbationSpec.initial_state(parse_angle(rest))
    if kind == "params":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ConfigError(f"Malformed perturbation '{token}': 'params' takes two deltas.")
        return PerturbationSpec.parameters(parse_angle(parts[0]), parse_angle(parts[1]))
    raise ConfigError(f"Unknown perturbation kind '{kind}' in '{token}'. Use 'initial' or 'params'.")


def format_perturbation(spec: Optional[PerturbationSpec]) -> Optional[str]:
    if spec is None:
        return None
    if spec.kind == "initial_state":
        return f"initial:{spec.deltas[0]!r}"
    return f"params:{spec.deltas[0]!r},{spec.deltas[1]!r}"


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    schedule: str = "qf"
    alpha1: float = ALPHA_1
    alpha2: float = ALPHA_1
    steps: int = DEFAULT_STEPS
    record_every: int = DEFAULT_RECORD_EVERY
    phi0: float = 0.0
    tape: str = "m1"
    out: Optional[str] = None
    format: str = "csv"
    perturb: Optional[PerturbationSpec] = None
    reduction: str = DEFAULT_REDUCTION
    flat_threshold: float = FLAT_THRESHOLD
    exp_threshold: float = EXP_THRESHOLD
    saturation_threshold: float = SATURATION_THRESHOLD
    pattern_tolerance: float = PATTERN_TOLERANCE
    log_level: str = LOG_LEVEL

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'. Expected one of {COMMANDS}.")
        if self.schedule not in SCHEDULE_NAMES:
            raise ConfigError(f"Unknown schedule '{self.schedule}'. Expected one of {SCHEDULE_NAMES}.")
        if self.steps < 0:
            raise ConfigError(f"--steps must be >= 0, got {self.steps}.")
        if self.record_every < 1:
            raise ConfigError(f"--record-every must be >= 1, got {self.record_every}.")
        for name in ("alpha1", "alpha2", "phi0"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"--{name} must be finite, got {getattr(self, name)}.")
        if self.command == "sensitivity" and self.perturb is None:
            raise ConfigError("The sensitivity command needs --perturb initial:<delta> or params:<d1>,<d2>.")

    @property
    def output_path(self) -> str:
        return self.out or os.path.join(OUTPUT_DIR, f"{self.command}_{self.schedule}.{self.format}")

    def to_dict(self) -> dict:
        """Flag-keyed dict of the resolved run; feeding it back through --config reproduces it."""
        d = dataclasses.asdict(self)
        d["perturb"] = format_perturbation(self.perturb)
        d["out"] = self.output_path
        for command, keys in _COMMAND_ONLY_FIELDS.items():
            if command != self.command:
                for key in keys:
                    d.pop(key)
        return {key.replace("_", "-"): value for key, value in d.items()}


# Fields that only one subcommand accepts as a flag.
_COMMAND_ONLY_FIELDS = {
    "pattern": ("pattern_tolerance",),
    "sensitivity": ("perturb", "flat_threshold", "exp_threshold", "saturation_threshold"),
}


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file of flag defaults (a .meta.json sidecar also works)")
    p.add_argument("--schedule", choices=SCHEDULE_NAMES, default="qf")
    p.add_argument("--alpha1", type=parse_angle, default=ALPHA_1, help="radians or <x>pi")
    p.add_argument("--alpha2", type=parse_angle, default=None, help="radians or <x>pi (default: alpha1)")
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--record-every", type=int, default=DEFAULT_RECORD_EVERY)
    p.add_argument("--phi0", type=parse_angle, default=0.0, help="initial head rotation angle")
    p.add_argument("--tape", choices=tuple(SPIN_STATES), default="m1")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--reduction", choices=REDUCTIONS, default=DEFAULT_REDUCTION)
    p.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=LOG_LEVEL)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="python -m scripts.cli",
                             description="Substitution-driven two-spin quantum Turing machine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    parser.subcommands = {}

    for command in COMMANDS:
        parser.subcommands[command] = p = sub.add_parser(command)
        _add_common_flags(p)

    p = parser.subcommands["pattern"]
    p.add_argument("--pattern-tolerance", type=float, default=PATTERN_TOLERANCE)

    p = parser.subcommands["sensitivity"]
    p.add_argument("--perturb", type=parse_perturbation, default=None,
                   help="initial:<delta> or params:<d1>,<d2>")
    p.add_argument("--flat-threshold", type=float, default=FLAT_THRESHOLD)
    p.add_argument("--exp-threshold", type=float, default=EXP_THRESHOLD)
    p.add_argument("--saturation-threshold", type=float, default=SATURATION_THRESHOLD)
    return parser


def _load_config_file(path: str) -> dict:
    try:
        if path.endswith(".meta.json"):
            data = read_sidecar(path)
        else:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config file '{path}': {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file '{path}' is not valid JSON: {e}") from e
    if isinstance(data, dict) and isinstance(data.get("config"), dict):
        data = data["config"]
    if not isinstance(data, dict):
        raise ConfigError(f"Config file '{path}' must hold a JSON object.")
    return data


def _apply_file_defaults(subparser: argparse.ArgumentParser, command: str, values: dict):
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, value in values.items():
        dest = key.lstrip("-").replace("-", "_")
        if dest == "command":
            if value != command:
                raise ConfigError(f"Config file is for command '{value}', not '{command}'.")
            continue
        if dest not in known or dest in ("config", "help"):
            raise ConfigError(f"Unknown config key '{key}' for command '{command}'.")
        action = known[dest]
        # string defaults are converted by argparse itself
        if value is not None and action.type is not None and not isinstance(value, str):
            value = action.type(value)
        if value is not None and action.choices is not None and value not in action.choices:
            raise ConfigError(f"Config key '{key}' has value '{value}'; expected one of {list(action.choices)}.")
        defaults[dest] = value
    subparser.set_defaults(**defaults)


def parse_config(argv: Optional[List[str]] = None) -> ExperimentConfig:
    """
    Resolves command-line tokens (and an optional --config file) into an ExperimentConfig.

    Raises:
        ConfigError: unknown flag, missing value or malformed angle/perturbation.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.config:
        _apply_file_defaults(parser.subcommands[args.command], args.command, _load_config_file(args.config))
        args = parser.parse_args(argv)

    alpha2 = args.alpha1 if args.alpha2 is None else args.alpha2
    return ExperimentConfig(
        command=args.command,
        schedule=args.schedule,
        alpha1=args.alpha1,
        alpha2=alpha2,
        steps=args.steps,
        record_every=args.record_every,
        phi0=args.phi0,
        tape=args.tape,
        out=args.out,
        format=args.format,
        perturb=getattr(args, "perturb", None),
        reduction=args.reduction,
        flat_threshold=getattr(args, "flat_threshold", FLAT_THRESHOLD),
        exp_threshold=getattr(args, "exp_threshold", EXP_THRESHOLD),
        saturation_threshold=getattr(args, "saturation_threshold", SATURATION_THRESHOLD),
        pattern_tolerance=getattr(args, "pattern_tolerance", PATTERN_TOLERANCE),
        log_level=args.log_level,
    )


def _schedule(config: ExperimentConfig):
    return schedule_from_name(config.schedule, config.alpha1, config.alpha2, config.steps, config.reduction)


def oracle_path(output_path: str, fmt: str) -> str:
    """``<out>.oracle.<fmt>`` next to the trajectory file ``<out>.<ext>``."""
    return f"{os.path.splitext(output_path)[0]}.oracle.{fmt}"


def _write_oracle(config: ExperimentConfig, schedule, initial, states) -> dict:
    """Closed-form head trace at the recorded steps; only defined for a head starting at |-1>."""
    traj = analytic_trajectory(schedule, config.steps, branch_weights(initial))
    rows = oracle_records(traj)
    rows = [rows[s.step - initial.step] for s in states]
    simulated = bloch_path(states, "S")
    s2 = np.array([r["s2_closed"] for r in rows])
    s3 = np.array([r["s3_closed"] for r in rows])
    deviation = float(max(np.max(np.abs(simulated[:, 1] - s2)), np.max(np.abs(simulated[:, 2] - s3))))
    path = oracle_path(config.output_path, config.format)
    write_records(path, rows, ORACLE_COLUMNS, config.format)
    return {"oracle_file": path, "oracle_max_deviation": deviation}


def _run_simulate(config: ExperimentConfig) -> dict:
    initial = initial_state(config.phi0, config.tape)
    schedule = _schedule(config)
    states = evolve(initial, schedule, config.steps, config.record_every)
    write_records(config.output_path, [bloch_record(s) for s in states], TRAJECTORY_COLUMNS, config.format)
    summary = {"records": len(states), "final_norm_drift": abs(states[-1].norm_sq - 1.0)}
    if config.phi0 == 0.0:
        summary.update(_write_oracle(config, schedule, initial, states))
    return summary


def _run_pattern(config: ExperimentConfig) -> dict:
    rows = simulate_pattern(initial_state(config.phi0, config.tape), _schedule(config),
                            config.steps, config.record_every)
    write_records(config.output_path, rows, PATTERN_COLUMNS, config.format)
    points = np.array([[r["s2_head"], r["s3_head"]] for r in rows])
    count = distinct_points(points, config.pattern_tolerance)
    print(f"distinct_points {count}")
    return {"records": len(rows), "distinct_points": count}


def _run_sensitivity(config: ExperimentConfig) -> dict:
    reference = RunConfig(initial_state(config.phi0, config.tape), _schedule(config), config.steps)
    trace = run_experiment(reference, config.perturb)
    rows = [r.as_dict() for r in trace if r.n % config.record_every == 0 or r.n == config.steps]
    write_records(config.output_path, rows, SENSITIVITY_COLUMNS, config.format)
    growth = classify_growth(trace, "d2_head", config.flat_threshold, config.exp_threshold,
                             config.saturation_threshold)
    print(growth.growth_class)
    return {"records": len(rows), "growth_class": growth.growth_class,
            "rate": None if math.isnan(growth.rate) else growth.rate}


def _run_sequence(config: ExperimentConfig) -> dict:
    schedule = _schedule(config)
    count = rotations_needed(config.steps)
    angles = schedule.angles(count)
    write_records(config.output_path, [{"m": m, "alpha_rad": float(a)} for m, a in enumerate(angles, start=1)],
                  SCHEDULE_COLUMNS, config.format)
    summary = {"angles": count}
    if schedule.letters is not None:
        letters_path = os.path.splitext(config.output_path)[0] + ".txt"
        write_letters(letters_path, schedule.letters.letters[:count])
        summary["letters_file"] = letters_path
    return summary


def _run_verify(config: ExperimentConfig) -> dict:
    results = run_verification_suite(config.steps)
    counts = count_results(results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    print(f"passed {counts['passed']} failed {counts['failed']} total {counts['total']}")
    if config.out:
        write_records(config.output_path, [r._asdict() for r in results], VERIFY_COLUMNS, config.format)
    return counts


def execute(config: ExperimentConfig) -> dict:
    """
    Executes one command and writes its artifacts (data file plus .meta.json sidecar).

    Returns:
        dict: Run summary, also stored in the sidecar.
    """
    logger.info(f"--- Starting '{config.command}' ({config.schedule} schedule, {config.steps} steps) ---")
    runners = {"simulate": _run_simulate, "pattern": _run_pattern, "sensitivity": _run_sensitivity,
               "sequence": _run_sequence, "verify": _run_verify}
    summary = runners[config.command](config)
    # verify writes files only on request
    if config.command != "verify" or config.out:
        write_sidecar(config.output_path, config.to_dict(), summary)
    logger.info(f"--- '{config.command}' complete ---")
    return summary


def run(config: ExperimentConfig) -> int:
    """Exit code of one command: 0 on success, 2 when verification checks fail."""
    summary = execute(config)
    if config.command == "verify" and summary["failed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def config_from_run(run_id: str, entry: dict, output_dir: str, steps: int = DEFAULT_STEPS,
                    command: Optional[str] = None, fmt: str = "csv") -> ExperimentConfig:
    """ExperimentConfig of one named run from config.NAMED_RUNS."""
    command = command or entry["command"]
    perturb = entry.get("perturb")
    return ExperimentConfig(
        command=command,
        schedule=entry["schedule"],
        alpha1=parse_angle(entry["alpha1"]),
        alpha2=parse_angle(entry.get("alpha2", entry["alpha1"])),
        steps=steps,
        out=os.path.join(output_dir, f"{run_id}.{fmt}"),
        format=fmt,
        perturb=parse_perturbation(perturb) if perturb and command == "sensitivity" else None,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = parse_config(argv)
        logging.getLogger().setLevel(getattr(logging, config.log_level))
        return run(config)
    except ConfigError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except SimulationError as e:
        logger.error(f"Run failed: {type(e).__name__}: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
