# scripts/lib/analytic.py
"""Closed-form head trajectory under substitution drive.

For the initial state |-1>^(S) (x) |-1>^(1) the network splits into two
unentangled branches, tape |+> and tape |->. In the |+> branch the head only
accumulates rotations, C_n(+) = alpha_1 + ... + alpha_m with m = ceil(n/2); in
the |-> branch every QCNOT mirrors the head angle, giving the recursion

    C_{2m-1}(-) = alpha_m + C_{2m-2}(-),   C_{2m}(-) = -C_{2m-1}(-),   C_0(-) = 0.

The head Bloch vector is the weighted mix of the two branch vectors
(sin C, -cos C); for equal weights it is cos B_n (sin A_n, -cos A_n) with
A_n = (C_n(+) + C_n(-))/2 and B_n = (C_n(+) - C_n(-))/2.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config import LOG_LEVEL, NORM_TOLERANCE
from .errors import ConfigError
from .quantum_core import SPIN_STATES, NetworkState
from .substitution import THUE_MORSE, AngleSchedule, rotations_needed

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

EQUAL_WEIGHTS = (0.5, 0.5)

ORACLE_COLUMNS = ["n", "c_plus", "c_minus", "a_n", "b_n", "s2_closed", "s3_closed"]


@dataclass(frozen=True)
class AnalyticTrajectory:
    """C_n(+) and C_n(-) for n = 0 .. n_max, indexed by n."""
    schedule: AngleSchedule
    c_plus: np.ndarray
    c_minus: np.ndarray
    bound_M: float
    weights: Tuple[float, float] = EQUAL_WEIGHTS

    @property
    def n_max(self) -> int:
        return len(self.c_plus) - 1

    @property
    def a_n(self) -> np.ndarray:
        return (self.c_plus + self.c_minus) / 2.0

    @property
    def b_n(self) -> np.ndarray:
        return (self.c_plus - self.c_minus) / 2.0


def minus_bound(schedule: AngleSchedule) -> float:
    """M = 2 max(|alpha1|, |alpha2|); a regular drive only uses alpha1."""
    if schedule.kind == "regular":
        return 2.0 * abs(schedule.alpha1)
    return 2.0 * max(abs(schedule.alpha1), abs(schedule.alpha2))


def _check_weights(weights: Tuple[float, float]):
    w_plus, w_minus = weights
    if w_plus < 0.0 or w_minus < 0.0:
        raise ConfigError(f"Branch weights must be nonnegative, got {weights}.")
    if abs(w_plus + w_minus - 1.0) > NORM_TOLERANCE:
        raise ConfigError(f"Branch weights must sum to 1, got {w_plus + w_minus!r}.")


def _steps_to_rotations(n_max: int) -> np.ndarray:
    # m = ceil(n/2) rotations have acted after step n
    return (np.arange(n_max + 1) + 1) // 2


def _letter_coefficients(schedule: AngleSchedule, n_max: int):
    """
    Exact recursion on integer coefficients of (alpha1, alpha2).

    Returns:
        tuple: (p_plus, q_plus, p_minus, q_minus) int64 arrays with
               C_n(+/-) = p * alpha1 + q * alpha2.
    """
    m_max = rotations_needed(n_max)
    if schedule.kind == "substitution":
        is_b = schedule.letters.b_mask(m_max)
    else:
        is_b = np.zeros(m_max, dtype=bool)

    q_prefix = np.concatenate(([0], np.cumsum(is_b, dtype=np.int64)))
    m_of_n = _steps_to_rotations(n_max)
    q_plus = q_prefix[m_of_n]
    p_plus = m_of_n - q_plus

    p_minus = np.zeros(n_max + 1, dtype=np.int64)
    q_minus = np.zeros(n_max + 1, dtype=np.int64)
    p = q = 0
    for n in range(1, n_max + 1):
        if n % 2 == 1:
            if is_b[(n + 1) // 2 - 1]:
                q += 1
            else:
                p += 1
        else:
            p, q = -p, -q
        p_minus[n] = p
        q_minus[n] = q
    return p_plus, q_plus, p_minus, q_minus


def minus_recursion(angles: np.ndarray, n_max: int) -> np.ndarray:
    """Floating-point C_n(-) for n = 0 .. n_max from alpha_1, alpha_2, ..."""
    out = np.zeros(n_max + 1, dtype=np.float64)
    c = 0.0
    for n in range(1, n_max + 1):
        c = float(angles[(n + 1) // 2 - 1]) + c if n % 2 == 1 else -c
        out[n] = c
    return out


def plus_accumulation(angles: np.ndarray, n_max: int) -> np.ndarray:
    """Floating-point C_n(+) for n = 0 .. n_max."""
    partial = np.concatenate(([0.0], np.cumsum(angles[:rotations_needed(n_max)])))
    return partial[_steps_to_rotations(n_max)]


def analytic_trajectory(schedule: AngleSchedule, n_max: int,
                        weights: Tuple[float, float] = EQUAL_WEIGHTS) -> AnalyticTrajectory:
    """
    Cumulative angles of both branches up to step ``n_max``.

    Letter-driven schedules (regular and substitution) are evaluated from the
    exact integer recursion; the chaotic rule uses the floating recursion.

    Raises:
        CapacityError: if the schedule holds fewer than ceil(n_max/2) angles.
    """
    if n_max < 0:
        raise ConfigError(f"n_max must be >= 0, got {n_max}.")
    _check_weights(weights)

    if schedule.kind == "chaotic_fibonacci":
        angles = schedule.angles(rotations_needed(n_max))
        c_plus = plus_accumulation(angles, n_max)
        c_minus = minus_recursion(angles, n_max)
    else:
        p_plus, q_plus, p_minus, q_minus = _letter_coefficients(schedule, n_max)
        a1, a2 = schedule.alpha1, schedule.alpha2
        c_plus = p_plus * a1 + q_plus * a2
        c_minus = p_minus * a1 + q_minus * a2

    c_plus.flags.writeable = False
    c_minus.flags.writeable = False
    return AnalyticTrajectory(schedule, c_plus, c_minus, minus_bound(schedule), tuple(weights))


def cumulative_plus(schedule: AngleSchedule, n: int) -> float:
    """C_n(+), the total head rotation of the tape-|+> branch after step n."""
    return float(analytic_trajectory(schedule, n).c_plus[n])


def cumulative_minus(schedule: AngleSchedule, n: int) -> float:
    """C_n(-), the mirrored head angle of the tape-|-> branch after step n."""
    return float(analytic_trajectory(schedule, n).c_minus[n])


def closed_form_path(traj: AnalyticTrajectory) -> Tuple[np.ndarray, np.ndarray]:
    """Head (sigma2, sigma3) for every n of the trajectory."""
    w_plus, w_minus = traj.weights
    if w_plus == w_minus == 0.5:
        cos_b = np.cos(traj.b_n)
        return cos_b * np.sin(traj.a_n), -cos_b * np.cos(traj.a_n)
    s2 = w_plus * np.sin(traj.c_plus) + w_minus * np.sin(traj.c_minus)
    s3 = -(w_plus * np.cos(traj.c_plus) + w_minus * np.cos(traj.c_minus))
    return s2, s3


def closed_form_bloch(schedule: AngleSchedule, n: int,
                      weights: Tuple[float, float] = EQUAL_WEIGHTS) -> Tuple[float, float]:
    """Head (sigma2, sigma3) at step n from the branch decomposition with weights (|a+|^2, |a-|^2)."""
    s2, s3 = closed_form_path(analytic_trajectory(schedule, n, weights))
    return float(s2[n]), float(s3[n])


def branch_weights(state: NetworkState) -> Tuple[float, float]:
    """(|a+|^2, |a-|^2): weight of the tape-|+> and tape-|-> branches of ``state``."""
    m = state.amplitudes.reshape(2, 2)
    w_plus = float(np.sum(np.abs(m @ SPIN_STATES["plus"].conj()) ** 2))
    w_minus = float(np.sum(np.abs(m @ SPIN_STATES["minus"].conj()) ** 2))
    return w_plus, w_minus


def verify_minus_bound(schedule: AngleSchedule, n_max: int) -> Tuple[bool, float]:
    """
    Checks |C_n(-)| <= M for n <= n_max.

    Returns:
        tuple: (holds, max_abs). For the chaotic rule the bound is expected to fail;
               ``holds`` reports what was observed.
    """
    traj = analytic_trajectory(schedule, n_max)
    max_abs = float(np.max(np.abs(traj.c_minus)))
    holds = max_abs <= traj.bound_M
    logger.debug(f"Minus-branch bound for '{schedule.name}': max |C_n(-)| = {max_abs:.6f}, M = {traj.bound_M:.6f}.")
    return holds, max_abs


def thue_morse_checkpoints(alpha1: float, alpha2: float, m_max: int) -> List[Tuple[int, float, float]]:
    """(8m, C_8m(+), C_8m(-)) = (8m, 2(alpha1 + alpha2) m, 0) for m = 1 .. m_max."""
    if m_max < 1:
        raise ConfigError(f"m_max must be >= 1, got {m_max}.")
    return [(8 * m, 2.0 * (alpha1 + alpha2) * m, 0.0) for m in range(1, m_max + 1)]


def regular_equivalent(alpha1: float, alpha2: float) -> AngleSchedule:
    """Regular drive with alpha = (alpha1 + alpha2)/2; shares the Thue-Morse 8m checkpoints."""
    return AngleSchedule.regular((alpha1 + alpha2) / 2.0)


def oracle_records(traj: AnalyticTrajectory) -> List[dict]:
    """Rows of the oracle trace export."""
    s2, s3 = closed_form_path(traj)
    a_n, b_n = traj.a_n, traj.b_n
    return [{"n": n, "c_plus": float(traj.c_plus[n]), "c_minus": float(traj.c_minus[n]),
             "a_n": float(a_n[n]), "b_n": float(b_n[n]),
             "s2_closed": float(s2[n]), "s3_closed": float(s3[n])}
            for n in range(traj.n_max + 1)]


if __name__ == "__main__":
    logger.info("Testing analytic.py...")
    tm_schedule = AngleSchedule.substitution(THUE_MORSE, 0.3, 0.5, 8)
    logger.info(f"tm C_8(+) = {cumulative_plus(tm_schedule, 8)}, C_8(-) = {cumulative_minus(tm_schedule, 8)}")
    logger.info(f"Checkpoints: {thue_morse_checkpoints(0.3, 0.5, 2)}")
