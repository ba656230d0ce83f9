# scripts/lib/quantum_core.py
"""Exact pure-state evolution of the two-spin network (Turing head S, tape spin 1).

Basis conventions:
    single spin: |-1> is the sigma3 eigenvector with eigenvalue -1, |1> with +1,
                 stored in the order (|-1>, |1>).
    network:     amplitudes of |j k> (j head, k tape) in the order
                 (-1,-1), (-1,1), (1,-1), (1,1).

Step n = 2m-1 rotates the head by exp(-i sigma1 alpha_m / 2); step n = 2m applies
the QCNOT (head -1 flips the tape, head +1 leaves it alone). The state is never
renormalized: norm drift is the error signal.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from config import DEFAULT_RECORD_EVERY, LOG_LEVEL, NORM_TOLERANCE
from .errors import ConfigError, InvariantError
from .substitution import AngleSchedule, rotations_needed, schedule_angle

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

# ---------- Pauli Operators ----------
# Written in the (|-1>, |1>) ordering, so sigma3 = diag(-1, 1) and sigma2 carries the
# matching sign: [sigma1, sigma2] = 2i sigma3 still holds.
SIGMA_1 = np.array([[0, 1],
                    [1, 0]], dtype=complex)

SIGMA_2 = np.array([[0, 1j],
                    [-1j, 0]], dtype=complex)

SIGMA_3 = np.array([[-1, 0],
                    [0, 1]], dtype=complex)

PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)
IDENTITY_2 = np.eye(2, dtype=complex)

_SQRT2_INV = 1.0 / math.sqrt(2.0)

# Single-spin kets addressed by the CLI tape names.
SPIN_STATES = {
    "m1": np.array([1, 0], dtype=complex),
    "p1": np.array([0, 1], dtype=complex),
    "plus": np.array([_SQRT2_INV, _SQRT2_INV], dtype=complex),
    "minus": np.array([_SQRT2_INV, -_SQRT2_INV], dtype=complex),
}

SUBSYSTEMS = ("S", "1")

_QCNOT_ORDER = np.array([1, 0, 2, 3])


@dataclass(frozen=True)
class NetworkState:
    amplitudes: np.ndarray
    step: int = 0

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(4)
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_normalized(self, tolerance: float = NORM_TOLERANCE):
        drift = abs(self.norm_sq - 1.0)
        if drift >= tolerance:
            raise InvariantError(f"State at step {self.step} has norm drift {drift:.3e} (tolerance {tolerance:.0e}).")


@dataclass(frozen=True)
class DensityMatrix2:
    entries: np.ndarray
    subsystem: str

    def check_valid(self, tolerance: float = NORM_TOLERANCE):
        rho = self.entries
        if np.max(np.abs(rho - rho.conj().T)) >= tolerance:
            raise InvariantError(f"Reduced state of '{self.subsystem}' is not Hermitian.")
        if abs(np.trace(rho).real - 1.0) >= tolerance:
            raise InvariantError(f"Reduced state of '{self.subsystem}' has trace {np.trace(rho).real!r}.")
        if np.min(np.linalg.eigvalsh(rho)) < -tolerance:
            raise InvariantError(f"Reduced state of '{self.subsystem}' has a negative eigenvalue.")


class BlochVector(NamedTuple):
    sigma1: float
    sigma2: float
    sigma3: float

    @property
    def length(self) -> float:
        return math.sqrt(self.sigma1 ** 2 + self.sigma2 ** 2 + self.sigma3 ** 2)


def head_ket(phi0: float = 0.0) -> np.ndarray:
    """exp(-i sigma1 phi0 / 2) |-1>."""
    return np.array([math.cos(phi0 / 2.0), -1j * math.sin(phi0 / 2.0)], dtype=complex)


def product_state(head: np.ndarray, tape: np.ndarray, step: int = 0) -> NetworkState:
    return NetworkState(np.kron(head, tape), step)


def initial_state(phi0: float = 0.0, tape: str = "m1") -> NetworkState:
    """
    Builds |phi0>^(S) (x) |tape>^(1).

    Args:
        phi0 (float): Initial head rotation angle in radians.
        tape (str): One of "m1" (|-1>), "p1" (|1>), "plus" (|+>), "minus" (|->).
    """
    if not math.isfinite(phi0):
        raise ConfigError(f"Initial head angle must be finite, got {phi0}.")
    if tape not in SPIN_STATES:
        raise ConfigError(f"Unknown tape state '{tape}'. Expected one of {', '.join(SPIN_STATES)}.")
    return product_state(head_ket(phi0), SPIN_STATES[tape])


def basis_state(j: int, k: int) -> NetworkState:
    """|j k> for j, k in {-1, 1}."""
    if j not in (-1, 1) or k not in (-1, 1):
        raise ConfigError(f"Basis labels must be -1 or 1, got ({j}, {k}).")
    amps = np.zeros(4, dtype=complex)
    amps[2 * (j == 1) + (k == 1)] = 1.0
    return NetworkState(amps)


def head_rotation(state: NetworkState, alpha: float) -> NetworkState:
    """exp(-i sigma1^(S) alpha/2) (x) 1^(1). Does not advance the step counter."""
    if not math.isfinite(alpha):
        raise ConfigError(f"Rotation angle must be finite, got {alpha}.")
    c = math.cos(alpha / 2.0)
    s = math.sin(alpha / 2.0)
    psi = state.amplitudes
    new = np.empty(4, dtype=np.complex128)
    new[0:2] = c * psi[0:2] - 1j * s * psi[2:4]
    new[2:4] = -1j * s * psi[0:2] + c * psi[2:4]
    return NetworkState(new, state.step)


def qcnot(state: NetworkState) -> NetworkState:
    """P_{-1,-1}^(S) sigma1^(1) + P_{1,1}^(S) 1^(1). Self-inverse; does not advance the step counter."""
    return NetworkState(state.amplitudes[_QCNOT_ORDER], state.step)


def _apply_step(state: NetworkState, n: int, alpha: float) -> NetworkState:
    if n % 2 == 1:
        rotated = head_rotation(state, alpha)
        return NetworkState(rotated.amplitudes, n)
    return NetworkState(qcnot(state).amplitudes, n)


def step(state: NetworkState, schedule: AngleSchedule) -> NetworkState:
    """Advances ``state`` from step n-1 to n: odd n rotates the head by alpha_{(n+1)/2}, even n applies the QCNOT."""
    n = state.step + 1
    alpha = schedule_angle(schedule, (n + 1) // 2) if n % 2 == 1 else 0.0
    return _apply_step(state, n, alpha)


def evolve(initial: NetworkState, schedule: AngleSchedule, n_steps: int,
           record_every: int = DEFAULT_RECORD_EVERY) -> List[NetworkState]:
    """
    Runs ``n_steps`` steps from ``initial`` and returns snapshots.

    Snapshots are taken at the initial state, at every step that is a multiple of
    ``record_every``, and at the final step.

    Raises:
        CapacityError: if the schedule cannot supply enough angles.
    """
    if n_steps < 0:
        raise ConfigError(f"Step count must be >= 0, got {n_steps}.")
    if record_every < 1:
        raise ConfigError(f"record_every must be >= 1, got {record_every}.")

    start = initial.step
    first_m = start // 2 + 1
    last_m = (start + n_steps + 1) // 2
    angles = schedule.angles(last_m)[first_m - 1:] if last_m >= first_m else np.empty(0)

    state = initial
    records = [state]
    for n in range(start + 1, start + n_steps + 1):
        alpha = angles[(n + 1) // 2 - first_m] if n % 2 == 1 else 0.0
        state = _apply_step(state, n, float(alpha))
        if (n - start) % record_every == 0 or n == start + n_steps:
            records.append(state)

    drift = abs(state.norm_sq - 1.0)
    logger.debug(f"Evolved {n_steps} steps under '{schedule.name}' schedule; final norm drift {drift:.3e}.")
    if drift >= NORM_TOLERANCE:
        logger.warning(f"Norm drift {drift:.3e} after {n_steps} steps exceeds {NORM_TOLERANCE:.0e}.")
    return records


def _as_matrix(state: NetworkState) -> np.ndarray:
    # rows: head j, columns: tape k
    return state.amplitudes.reshape(2, 2)


def reduce(state: NetworkState, subsystem: str) -> DensityMatrix2:
    """Partial trace onto the head ("S") or the tape spin ("1")."""
    m = _as_matrix(state)
    if subsystem == "S":
        rho = m @ m.conj().T
    elif subsystem == "1":
        rho = m.T @ m.conj()
    else:
        raise ConfigError(f"Unknown subsystem '{subsystem}'. Expected 'S' or '1'.")
    return DensityMatrix2(rho, subsystem)


def bloch(rho: DensityMatrix2) -> BlochVector:
    """Bloch components Tr(rho sigma_j)."""
    return BlochVector(*(float(np.real(np.trace(rho.entries @ p))) for p in PAULIS))


def purity(rho: DensityMatrix2) -> float:
    """Tr(rho^2), between 1/2 and 1 for a spin."""
    return float(np.real(np.trace(rho.entries @ rho.entries)))


def overlap_sq(psi: NetworkState, psi_prime: NetworkState) -> float:
    """|<psi|psi'>|^2."""
    return float(abs(np.vdot(psi.amplitudes, psi_prime.amplitudes)) ** 2)


def density_matrix(state: NetworkState) -> np.ndarray:
    """Full 4x4 projector |psi><psi|."""
    return np.outer(state.amplitudes, state.amplitudes.conj())


def expectation(state: NetworkState, operator: np.ndarray) -> float:
    """<psi|O|psi> for a 4x4 Hermitian operator."""
    return float(np.real(np.vdot(state.amplitudes, operator @ state.amplitudes)))


def bloch_record(state: NetworkState) -> dict:
    """One trajectory row: head and tape Bloch vectors and purities."""
    rho_head = reduce(state, "S")
    rho_tape = reduce(state, "1")
    head = bloch(rho_head)
    tape = bloch(rho_tape)
    return {
        "n": state.step,
        "s1_head": head.sigma1, "s2_head": head.sigma2, "s3_head": head.sigma3,
        "s1_tape": tape.sigma1, "s2_tape": tape.sigma2, "s3_tape": tape.sigma3,
        "purity_head": purity(rho_head), "purity_tape": purity(rho_tape),
    }


TRAJECTORY_COLUMNS = ["n", "s1_head", "s2_head", "s3_head", "s1_tape", "s2_tape", "s3_tape",
                      "purity_head", "purity_tape"]


def _reduced_stack(states: List[NetworkState], subsystem: str) -> np.ndarray:
    m = np.stack([s.amplitudes for s in states]).reshape(-1, 2, 2)
    if subsystem == "S":
        return m @ m.conj().transpose(0, 2, 1)
    if subsystem == "1":
        return m.transpose(0, 2, 1) @ m.conj()
    raise ConfigError(f"Unknown subsystem '{subsystem}'. Expected 'S' or '1'.")


def bloch_path(states: List[NetworkState], subsystem: str = "S") -> np.ndarray:
    """(len(states), 3) array of Bloch vectors of one subsystem along a trajectory."""
    if not states:
        return np.empty((0, 3))
    rho = _reduced_stack(states, subsystem)
    return np.stack([np.einsum("nij,ji->n", rho, p).real for p in PAULIS], axis=1)


def purity_path(states: List[NetworkState], subsystem: str = "S") -> np.ndarray:
    if not states:
        return np.empty(0)
    rho = _reduced_stack(states, subsystem)
    return np.einsum("nij,nji->n", rho, rho).real


if __name__ == "__main__":
    logger.info("Testing quantum_core.py...")
    states = evolve(basis_state(-1, -1), AngleSchedule.regular(math.pi), 2)
    logger.info(f"After rotation pi and QCNOT: {states[-1].amplitudes}, head Bloch {bloch(reduce(states[-1], 'S'))}")
    logger.info(f"Rotations needed for 10000 steps: {rotations_needed(10000)}")
