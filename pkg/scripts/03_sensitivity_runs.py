# scripts/03_sensitivity_runs.py
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


def sensitivity_runs(output_dir=OUTPUT_DIR, steps=DEFAULT_STEPS):
    """
    Distance traces of the sensitivity runs in config.NAMED_RUNS.

    Returns:
        dict: run id -> growth class of the head distance.
    """
    runs = {k: v for k, v in NAMED_RUNS.items() if v.get("command") == "sensitivity"}
    if not runs:
        logger.warning("No sensitivity runs defined in NAMED_RUNS in config.py.")
        return {}

    trace_dir = os.path.join(output_dir, "sensitivity")
    classes = {}
    for run_id, entry in runs.items():
        if not entry.get("perturb"):
            logger.warning(f"Sensitivity run '{run_id}' has no 'perturb' entry. Skipping.")
            continue
        logger.info(f"--- Starting sensitivity run '{run_id}': {entry.get('name', run_id)} ---")
        try:
            summary = execute(config_from_run(run_id, entry, trace_dir, steps))
        except (SimulationError, OSError) as e:
            logger.error(f"Sensitivity run '{run_id}' failed: {e}")
            continue
        classes[run_id] = summary["growth_class"]
        logger.info(f"'{run_id}': {summary['growth_class']} (rate {summary['rate']}).")
    return classes


if __name__ == "__main__":
    sensitivity_runs()
