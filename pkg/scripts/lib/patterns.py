# scripts/lib/patterns.py
"""Head point patterns in the (sigma2, sigma3) plane and their distinct-point count."""
import logging
from typing import List

import numpy as np

from config import LOG_LEVEL, PATTERN_TOLERANCE
from .errors import ConfigError
from .quantum_core import NetworkState, bloch_path, evolve
from .substitution import AngleSchedule

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

PATTERN_COLUMNS = ["n", "s2_head", "s3_head"]

# Exact duplicates are merged on this grid before clustering; far below any useful tolerance.
_DEDUP_DECIMALS = 12


def head_points(states: List[NetworkState]) -> np.ndarray:
    """(N, 2) array of head (sigma2, sigma3)."""
    return bloch_path(states, "S")[:, 1:]


def simulate_pattern(initial: NetworkState, schedule: AngleSchedule, n_steps: int,
                     record_every: int = 1) -> List[dict]:
    """Pattern rows (n, s2_head, s3_head) of one run."""
    states = evolve(initial, schedule, n_steps, record_every)
    points = head_points(states)
    return [{"n": s.step, "s2_head": float(p[0]), "s3_head": float(p[1])} for s, p in zip(states, points)]


def distinct_points(points: np.ndarray, tolerance: float = PATTERN_TOLERANCE) -> int:
    """
    Greedy clustering count: points are visited in order and a point opens a new
    cluster when it lies farther than ``tolerance`` (Euclidean) from every existing center.
    """
    if tolerance <= 0.0:
        raise ConfigError(f"Pattern tolerance must be positive, got {tolerance}.")
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(points) == 0:
        return 0

    # first-occurrence order of the rounded points
    _, first = np.unique(np.round(points, _DEDUP_DECIMALS), axis=0, return_index=True)
    candidates = points[np.sort(first)]

    centers = np.empty_like(candidates)
    count = 0
    for p in candidates:
        if count and np.min(np.hypot(*(centers[:count] - p).T)) <= tolerance:
            continue
        centers[count] = p
        count += 1
    logger.debug(f"{len(points)} points, {len(candidates)} unique, {count} clusters at tolerance {tolerance:g}.")
    return count


if __name__ == "__main__":
    import math
    from .quantum_core import basis_state
    logger.info("Testing patterns.py...")
    rows = simulate_pattern(basis_state(-1, -1), AngleSchedule.regular(2 * math.pi / 5), 1000)
    pts = np.array([[r["s2_head"], r["s3_head"]] for r in rows])
    logger.info(f"Regular drive: {distinct_points(pts)} distinct head points.")
