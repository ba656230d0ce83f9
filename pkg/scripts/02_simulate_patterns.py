# scripts/02_simulate_patterns.py
import logging
import os

from config import DEFAULT_STEPS, LOG_LEVEL, OUTPUT_DIR, NAMED_RUNS
from .cli import config_from_run, execute
from .lib.errors import SimulationError

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')


def simulate_patterns(output_dir=OUTPUT_DIR, steps=DEFAULT_STEPS):
    """
    Head (sigma2, sigma3) point patterns of the pattern runs in config.NAMED_RUNS.

    Returns:
        dict: run id -> distinct head point count.
    """
    pattern_runs = {k: v for k, v in NAMED_RUNS.items() if v.get("command") == "pattern"}
    if not pattern_runs:
        logger.warning("No pattern runs defined in NAMED_RUNS in config.py.")
        return {}

    pattern_dir = os.path.join(output_dir, "patterns")
    counts = {}
    for run_id, entry in pattern_runs.items():
        logger.info(f"--- Starting pattern run '{run_id}': {entry.get('name', run_id)} ---")
        try:
            summary = execute(config_from_run(run_id, entry, pattern_dir, steps))
        except (SimulationError, OSError) as e:
            logger.error(f"Pattern run '{run_id}' failed: {e}")
            continue
        counts[run_id] = summary["distinct_points"]
        logger.info(f"'{run_id}': {counts[run_id]} distinct head points.")
    return counts


if __name__ == "__main__":
    simulate_patterns()
