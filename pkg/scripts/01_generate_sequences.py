# scripts/01_generate_sequences.py
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


def generate_sequences(output_dir=OUTPUT_DIR, steps=DEFAULT_STEPS):
    """Writes the letter word and the angle schedule of every run in config.NAMED_RUNS."""
    if not NAMED_RUNS:
        logger.warning("No runs defined in NAMED_RUNS in config.py. Nothing to generate.")
        return {}

    sequence_dir = os.path.join(output_dir, "sequences")
    summaries = {}
    for run_id, entry in NAMED_RUNS.items():
        logger.info(f"--- Starting sequence generation for '{run_id}': {entry.get('name', run_id)} ---")
        try:
            config = config_from_run(run_id, entry, sequence_dir, steps, command="sequence")
            summaries[run_id] = execute(config)
        except (SimulationError, OSError) as e:
            logger.error(f"Sequence generation for '{run_id}' failed: {e}")
            continue
    logger.info(f"Sequence generation complete: {len(summaries)}/{len(NAMED_RUNS)} runs written to {sequence_dir}.")
    return summaries


if __name__ == "__main__":
    generate_sequences()
