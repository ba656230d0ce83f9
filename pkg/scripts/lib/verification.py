# scripts/lib/verification.py
"""Verification suite: simulation against the closed form, physical invariants,
pattern collapse, sensitivity classes, metric properties and the word generators."""
import logging
import math
from typing import Callable, List, NamedTuple

import numpy as np

from config import (ALPHA_1, DEFAULT_STEPS, LOG_LEVEL, METRIC_SAMPLES, NORM_TOLERANCE, ORACLE_TOLERANCE,
                    PATTERN_COLLAPSE_MAX, PATTERN_SPREAD_MIN, PATTERN_TOLERANCE, RANDOM_SEED)
from .analytic import (analytic_trajectory, closed_form_path, minus_recursion, regular_equivalent,
                       thue_morse_checkpoints, verify_minus_bound)
from .errors import InvariantError, SimulationError
from .patterns import distinct_points, head_points
from .quantum_core import (NetworkState, basis_state, bloch_path, density_matrix, evolve, initial_state,
                           overlap_sq, purity_path, reduce)
from .sensitivity import PerturbationSpec, RunConfig, classify_growth, distance_sq, run_experiment
from .substitution import (FIBONACCI, GOLDEN_MEAN, PERIOD_DOUBLING, THUE_MORSE, AngleSchedule, expand_rule,
                           generate_letters, letter_frequency, rotations_needed, schedule_from_name)

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

SENSITIVITY_DELTA = 0.001
ALL_SCHEDULES = ("regular", "qf", "tm", "pd", "cf")


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _oracle_schedules(steps: int):
    return {
        "regular": schedule_from_name("regular", ALPHA_1, ALPHA_1, steps),
        "qf": schedule_from_name("qf", ALPHA_1, ALPHA_1 + 0.03 * math.pi, steps),
        "tm": schedule_from_name("tm", ALPHA_1, ALPHA_1 + 0.1001 * math.pi, steps),
    }


def check_oracle_equivalence(steps: int) -> List[CheckResult]:
    results = []
    for name, schedule in _oracle_schedules(steps).items():
        states = evolve(basis_state(-1, -1), schedule, steps)
        simulated = bloch_path(states, "S")
        s2, s3 = closed_form_path(analytic_trajectory(schedule, steps))
        deviation = float(max(np.max(np.abs(simulated[:, 1] - s2)), np.max(np.abs(simulated[:, 2] - s3))))
        sigma1 = float(np.max(np.abs(simulated[:, 0])))
        passed = deviation < ORACLE_TOLERANCE and sigma1 < ORACLE_TOLERANCE
        results.append(CheckResult(f"oracle_equivalence[{name}]", passed,
                                   f"max |simulated - closed form| = {deviation:.3e}, max |sigma1| = {sigma1:.3e}"))
    return results


def check_minus_bound(steps: int) -> List[CheckResult]:
    results = []
    for name, schedule in _oracle_schedules(steps).items():
        if name == "regular":
            continue
        holds, max_abs = verify_minus_bound(schedule, steps)
        results.append(CheckResult(f"minus_bound[{name}]", holds, f"max |C_n(-)| = {max_abs:.6f}"))
    # the chaotic rule is expected to break it
    holds, max_abs = verify_minus_bound(AngleSchedule.chaotic_fibonacci(1.0, 1.0, "none"), 100)
    results.append(CheckResult("minus_bound_violated[cf]", not holds, f"max |C_n(-)| = {max_abs:.3e}"))
    return results


def check_thue_morse_checkpoints(steps: int, m_max: int = 1000) -> List[CheckResult]:
    m_max = max(1, min(m_max, steps // 8))
    alpha1, alpha2 = ALPHA_1, ALPHA_1 + 0.1001 * math.pi
    n_max = 8 * m_max
    schedule = AngleSchedule.substitution(THUE_MORSE, alpha1, alpha2, rotations_needed(n_max))
    traj = analytic_trajectory(schedule, n_max)
    float_minus = minus_recursion(schedule.angles(rotations_needed(n_max)), n_max)
    regular = analytic_trajectory(regular_equivalent(alpha1, alpha2), n_max)

    worst_minus = worst_plus = worst_recursion = worst_regular = 0.0
    for n, c_plus, c_minus in thue_morse_checkpoints(alpha1, alpha2, m_max):
        worst_minus = max(worst_minus, abs(traj.c_minus[n] - c_minus))
        worst_plus = max(worst_plus, abs(traj.c_plus[n] - c_plus))
        worst_recursion = max(worst_recursion, abs(float_minus[n]))
        worst_regular = max(worst_regular, abs(regular.c_minus[n] - c_minus),
                            abs(regular.c_plus[n] - c_plus) / max(1.0, abs(c_plus)))
    passed = worst_minus < 1e-12 and worst_plus < 1e-9 and worst_recursion < 1e-10 and worst_regular < 1e-10
    return [CheckResult("thue_morse_checkpoints", passed,
                        f"m <= {m_max}: max |C(-)| = {worst_minus:.1e}, max |C(+) - 2(a1+a2)m| = {worst_plus:.1e}, "
                        f"floating recursion max |C(-)| = {worst_recursion:.1e}, "
                        f"regular drive at (a1+a2)/2 off by {worst_regular:.1e}")]


def check_no_entanglement(steps: int) -> List[CheckResult]:
    results = []
    for tape in ("plus", "minus"):
        worst = 0.0
        for name in ALL_SCHEDULES:
            schedule = schedule_from_name(name, ALPHA_1, ALPHA_1 + 0.03 * math.pi, steps)
            states = evolve(initial_state(0.0, tape), schedule, steps)
            worst = max(worst, float(np.max(np.abs(purity_path(states, "S") - 1.0))))
        results.append(CheckResult(f"no_entanglement[{tape}]", worst < NORM_TOLERANCE,
                                   f"max |purity_head - 1| = {worst:.3e} over {', '.join(ALL_SCHEDULES)}"))
    return results


def check_unitarity(steps: int) -> List[CheckResult]:
    worst = 0.0
    for name in ALL_SCHEDULES:
        schedule = schedule_from_name(name, ALPHA_1, ALPHA_1 + 0.03 * math.pi, steps)
        final = evolve(basis_state(-1, -1), schedule, steps, max(steps, 1))[-1]
        worst = max(worst, abs(final.norm_sq - 1.0))
    return [CheckResult("unitarity", worst < NORM_TOLERANCE, f"max norm drift after {steps} steps = {worst:.3e}")]


def check_state_validity(steps: int) -> List[CheckResult]:
    """Every recorded state is normalized and both reduced states are valid density matrices."""
    results = []
    for name, schedule in _oracle_schedules(steps).items():
        checked = 0
        try:
            for state in evolve(basis_state(-1, -1), schedule, steps):
                state.check_normalized()
                reduce(state, "S").check_valid()
                reduce(state, "1").check_valid()
                checked += 1
        except InvariantError as e:
            results.append(CheckResult(f"state_validity[{name}]", False, str(e)))
            continue
        results.append(CheckResult(f"state_validity[{name}]", True, f"{checked} states normalized with valid reductions"))
    return results


def check_patterns(steps: int) -> List[CheckResult]:
    collapse = schedule_from_name("qf", ALPHA_1, ALPHA_1, steps)
    spread = schedule_from_name("qf", ALPHA_1, ALPHA_1 + 0.05 * math.pi, steps)
    n_collapse = distinct_points(head_points(evolve(basis_state(-1, -1), collapse, steps)), PATTERN_TOLERANCE)
    n_spread = distinct_points(head_points(evolve(basis_state(-1, -1), spread, steps)), PATTERN_TOLERANCE)
    return [
        CheckResult("pattern_collapse", n_collapse <= PATTERN_COLLAPSE_MAX,
                    f"{n_collapse} distinct points for alpha1 = alpha2 (allowed <= {PATTERN_COLLAPSE_MAX})"),
        CheckResult("pattern_spread", n_spread > PATTERN_SPREAD_MIN,
                    f"{n_spread} distinct points for alpha2 = alpha1 + 0.05 pi (required > {PATTERN_SPREAD_MIN})"),
    ]


def check_sensitivity_classes(steps: int) -> List[CheckResult]:
    alpha2 = ALPHA_1 + 0.03 * math.pi
    initial = PerturbationSpec.initial_state(SENSITIVITY_DELTA)
    params = PerturbationSpec.parameters(SENSITIVITY_DELTA * math.pi, SENSITIVITY_DELTA * math.pi)
    cases = [
        ("regular", initial, {"flat"}),
        ("qf", initial, {"flat", "bounded"}),
        ("tm", initial, {"flat", "bounded"}),
        ("qf", params, {"bounded"}),
        ("tm", params, {"bounded"}),
        ("cf", initial, {"exponential"}),
    ]
    results = []
    for name, perturbation, expected in cases:
        schedule = schedule_from_name(name, ALPHA_1, alpha2, steps)
        trace = run_experiment(RunConfig(basis_state(-1, -1), schedule, steps), perturbation)
        try:
            growth = classify_growth(trace)
        except SimulationError as e:
            results.append(CheckResult(f"sensitivity[{name},{perturbation.kind}]", False, str(e)))
            continue
        results.append(CheckResult(f"sensitivity[{name},{perturbation.kind}]", growth.growth_class in expected,
                                   f"class {growth.growth_class} (rate {growth.rate:.4f}), "
                                   f"expected {' or '.join(sorted(expected))}"))
    return results


def _random_state(rng: np.random.Generator) -> NetworkState:
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return NetworkState(v / np.linalg.norm(v))


def check_metric_properties(samples: int = METRIC_SAMPLES, seed: int = RANDOM_SEED) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    worst_range = worst_self = worst_identity = 0.0
    for _ in range(samples):
        psi, psi_prime = _random_state(rng), _random_state(rng)
        rho, rho_prime = density_matrix(psi), density_matrix(psi_prime)
        d2 = distance_sq(rho, rho_prime)
        worst_range = max(worst_range, -d2, d2 - 2.0)
        worst_self = max(worst_self, abs(distance_sq(rho, rho)))
        worst_identity = max(worst_identity, abs(d2 - 2.0 * (1.0 - overlap_sq(psi, psi_prime))))
    return [
        CheckResult("metric_range", worst_range <= NORM_TOLERANCE, f"worst excursion outside [0, 2] = {worst_range:.3e}"),
        CheckResult("metric_self_distance", worst_self <= NORM_TOLERANCE, f"max D^2(rho, rho) = {worst_self:.3e}"),
        CheckResult("metric_pure_state_identity", worst_identity < NORM_TOLERANCE,
                    f"max |D^2 - 2(1 - O')| = {worst_identity:.3e} over {samples} pairs"),
    ]


def check_sequences() -> List[CheckResult]:
    qf_word = expand_rule(FIBONACCI, "a", 6)
    tm_word = expand_rule(THUE_MORSE, "a", 4)
    pd_word = expand_rule(PERIOD_DOUBLING, "a", 3)
    freq = letter_frequency(generate_letters(FIBONACCI, 10946), "a")
    return [
        CheckResult("sequence[qf]", qf_word.startswith("abaababaabaababa"), f"{qf_word[:16]}..."),
        CheckResult("sequence[tm]", tm_word == "abbabaabbaababba", tm_word),
        CheckResult("sequence[pd]", pd_word == "abaaabab", pd_word),
        CheckResult("sequence_golden_mean", abs(freq - GOLDEN_MEAN) < 1e-3,
                    f"a-frequency {freq:.6f} vs {GOLDEN_MEAN:.6f}"),
    ]


def run_verification_suite(steps: int = DEFAULT_STEPS) -> List[CheckResult]:
    """
    Runs every check. A check that raises is reported as failed, the rest still run.

    Args:
        steps (int): Network steps for the simulation-based checks.

    Returns:
        list: CheckResult per check, in a fixed order.
    """
    groups: List[Callable[[], List[CheckResult]]] = [
        lambda: check_oracle_equivalence(steps),
        lambda: check_minus_bound(steps),
        lambda: check_thue_morse_checkpoints(steps),
        lambda: check_no_entanglement(steps),
        lambda: check_unitarity(steps),
        lambda: check_state_validity(steps),
        lambda: check_patterns(steps),
        lambda: check_sensitivity_classes(steps),
        check_metric_properties,
        check_sequences,
    ]
    results = []
    for group in groups:
        try:
            results.extend(group())
        except SimulationError as e:
            logger.error(f"Verification check raised: {e}")
            results.append(CheckResult("error", False, str(e)))
    for r in results:
        log = logger.info if r.passed else logger.error
        log(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    return results


def count_results(results: List[CheckResult]) -> dict:
    passed = sum(1 for r in results if r.passed)
    return {"passed": passed, "failed": len(results) - passed, "total": len(results)}


if __name__ == "__main__":
    logger.info("Running verification suite at 2000 steps...")
    logger.info(count_results(run_verification_suite(2000)))
