# scripts/lib/sensitivity.py
"""Parameter sensitivity of the Turing machine.

The distance between density operators is D^2 = Tr{(rho - rho')^2}. It is
commonly labelled the Bures metric; it is the squared Hilbert-Schmidt
distance and is used here as given. It lies between 0 and 2 and equals
2(1 - |<psi|psi'>|^2) for pure states.

A reference run and a perturbed run are evolved side by side and compared at
every step for the total network state, the head and the tape spin. The head
trace is then classified as flat, bounded or exponential.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from config import (EXP_THRESHOLD, FLAT_THRESHOLD, LOG_LEVEL, MIN_FIT_POINTS, NUMERICAL_FLOOR,
                    SATURATION_THRESHOLD)
from .errors import ConfigError, SensitivityError
from .quantum_core import NetworkState, density_matrix, evolve, head_rotation, overlap_sq, reduce
from .substitution import AngleSchedule

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

PERTURBATION_KINDS = ("initial_state", "parameters")
GROWTH_CLASSES = ("flat", "bounded", "exponential")

SENSITIVITY_COLUMNS = ["n", "d2_total", "d2_head", "d2_tape", "overlap_sq"]

# Slack for the empirical partial-trace contractivity check.
_CONTRACTIVITY_SLACK = 1e-10


@dataclass(frozen=True)
class PerturbationSpec:
    """
    initial_state: deltas = (delta,), an extra head rotation exp(-i sigma1^(S) delta/2) on |psi_0>.
    parameters:    deltas = (delta1, delta2), additive offsets to alpha1 and alpha2.
    """
    kind: str
    deltas: Tuple[float, ...]

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ConfigError(f"Unknown perturbation kind '{self.kind}'. Expected one of {PERTURBATION_KINDS}.")
        expected = 1 if self.kind == "initial_state" else 2
        if len(self.deltas) != expected:
            raise ConfigError(f"Perturbation '{self.kind}' takes {expected} delta(s), got {len(self.deltas)}.")
        if not all(math.isfinite(d) for d in self.deltas):
            raise ConfigError(f"Perturbation deltas must be finite, got {self.deltas}.")
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))

    @classmethod
    def initial_state(cls, delta: float) -> "PerturbationSpec":
        return cls("initial_state", (delta,))

    @classmethod
    def parameters(cls, delta1: float, delta2: float) -> "PerturbationSpec":
        return cls("parameters", (delta1, delta2))

    def apply(self, initial: NetworkState, schedule: AngleSchedule) -> Tuple[NetworkState, AngleSchedule]:
        """
        Perturbed (initial state, schedule) pair.

        The chaotic Fibonacci rule is seeded by the initial phase, so an
        initial-state perturbation of a chaotic drive also shifts both recursion
        seeds by delta; every later angle then carries delta * F_m.
        """
        if self.kind == "parameters":
            return initial, schedule.with_offsets(*self.deltas)
        delta = self.deltas[0]
        perturbed = head_rotation(initial, delta)
        if schedule.kind == "chaotic_fibonacci":
            schedule = schedule.with_offsets(delta, delta)
        return perturbed, schedule


@dataclass(frozen=True)
class RunConfig:
    initial: NetworkState
    schedule: AngleSchedule
    n_steps: int


@dataclass(frozen=True)
class SensitivityRecord:
    n: int
    d2_total: float
    d2_head: float
    d2_tape: float
    overlap_sq: float

    def as_dict(self) -> dict:
        return {"n": self.n, "d2_total": self.d2_total, "d2_head": self.d2_head,
                "d2_tape": self.d2_tape, "overlap_sq": self.overlap_sq}


class GrowthResult(NamedTuple):
    growth_class: str
    rate: float


def distance_sq(rho: np.ndarray, rho_prime: np.ndarray) -> float:
    """
    D^2 = Tr{(rho - rho')^2} for two density matrices of the same shape.

    Raises:
        ConfigError: on a shape mismatch.
    """
    rho = np.asarray(rho)
    rho_prime = np.asarray(rho_prime)
    if rho.shape != rho_prime.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ConfigError(f"Density matrices must be square and of equal shape, got {rho.shape} and {rho_prime.shape}.")
    delta = rho - rho_prime
    # Tr(delta^2) = sum |delta_ij|^2 for Hermitian delta
    return float(np.vdot(delta, delta).real)


def compare_states(psi: NetworkState, psi_prime: NetworkState) -> SensitivityRecord:
    """Distances between two network states at the same step."""
    d2_head = distance_sq(reduce(psi, "S").entries, reduce(psi_prime, "S").entries)
    d2_tape = distance_sq(reduce(psi, "1").entries, reduce(psi_prime, "1").entries)
    d2_total = distance_sq(density_matrix(psi), density_matrix(psi_prime))
    return SensitivityRecord(psi.step, d2_total, d2_head, d2_tape, overlap_sq(psi, psi_prime))


def run_experiment(reference: RunConfig, perturbation: PerturbationSpec) -> List[SensitivityRecord]:
    """
    Evolves the reference and the perturbed run and compares them at every step.

    Returns:
        list: One SensitivityRecord per step n = 0 .. n_steps.
    """
    perturbed_initial, perturbed_schedule = perturbation.apply(reference.initial, reference.schedule)

    logger.debug(f"Sensitivity run: '{reference.schedule.name}' schedule, {reference.n_steps} steps, "
                 f"{perturbation.kind} perturbation {perturbation.deltas}.")
    with ThreadPoolExecutor(max_workers=2) as pool:
        ref_future = pool.submit(evolve, reference.initial, reference.schedule, reference.n_steps, 1)
        pert_future = pool.submit(evolve, perturbed_initial, perturbed_schedule, reference.n_steps, 1)
        ref_states = ref_future.result()
        pert_states = pert_future.result()

    records = [compare_states(psi, psi_prime) for psi, psi_prime in zip(ref_states, pert_states)]

    worst = max((max(r.d2_head, r.d2_tape) - r.d2_total for r in records), default=0.0)
    if worst > _CONTRACTIVITY_SLACK:
        logger.warning(f"Reduced distance exceeds total distance by {worst:.3e} in this trace.")
    return records


def fit_window(trace: List[SensitivityRecord], field: str = "d2_head",
               saturation_threshold: float = SATURATION_THRESHOLD,
               floor: float = NUMERICAL_FLOOR) -> Tuple[np.ndarray, np.ndarray]:
    """(n, ln d2) of the records before the first one reaching saturation, ignoring d2 < floor."""
    steps, logs = [], []
    for record in trace:
        value = getattr(record, field)
        if value >= saturation_threshold:
            break
        if value >= floor:
            steps.append(record.n)
            logs.append(math.log(value))
    return np.array(steps, dtype=np.float64), np.array(logs, dtype=np.float64)


def classify_growth(trace: List[SensitivityRecord], field: str = "d2_head",
                    flat_threshold: float = FLAT_THRESHOLD,
                    exp_threshold: float = EXP_THRESHOLD,
                    saturation_threshold: float = SATURATION_THRESHOLD,
                    floor: float = NUMERICAL_FLOOR,
                    min_points: int = MIN_FIT_POINTS) -> GrowthResult:
    """
    Classifies the growth of one distance field of a trace.

    flat:        max d2 over the whole trace < flat_threshold (an all-zero trace is flat)
    exponential: least-squares slope of ln d2 against n over the fit window >= exp_threshold
    bounded:     anything else

    Returns:
        GrowthResult: (class, per-step slope of ln d2; nan when no fit was possible).

    Raises:
        SensitivityError: if a non-flat trace has fewer than ``min_points`` usable points.
    """
    if field not in SENSITIVITY_COLUMNS[1:]:
        raise ConfigError(f"Unknown trace field '{field}'. Expected one of {SENSITIVITY_COLUMNS[1:]}.")
    values = [getattr(r, field) for r in trace]
    steps, logs = fit_window(trace, field, saturation_threshold, floor)
    rate = float(np.polyfit(steps, logs, 1)[0]) if len(steps) >= 2 else float("nan")

    if not values or max(values) < flat_threshold:
        return GrowthResult("flat", rate)
    if len(steps) < min_points:
        raise SensitivityError(f"Only {len(steps)} usable points in the fit window of '{field}' "
                               f"(need {min_points}).")
    if rate >= exp_threshold:
        return GrowthResult("exponential", rate)
    return GrowthResult("bounded", rate)


def max_distance(trace: List[SensitivityRecord], field: str = "d2_head") -> Optional[float]:
    return max((getattr(r, field) for r in trace), default=None)


if __name__ == "__main__":
    logger.info("Testing sensitivity.py...")
    from .quantum_core import basis_state
    ref = RunConfig(basis_state(-1, -1), AngleSchedule.chaotic_fibonacci(0.4 * math.pi, 0.43 * math.pi), 200)
    result = classify_growth(run_experiment(ref, PerturbationSpec.initial_state(0.001)))
    logger.info(f"cf drive, initial perturbation: {result.growth_class} (rate {result.rate:.4f})")
