# scripts/04_verify_invariants.py
import logging
import os
import sys

from config import DEFAULT_STEPS, LOG_LEVEL, OUTPUT_DIR
from .cli import EXIT_OK, EXIT_VERIFY_FAILED, ExperimentConfig, execute

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')


def verify_invariants(output_dir=OUTPUT_DIR, steps=DEFAULT_STEPS):
    """Runs the verification suite and writes its report to <output_dir>/verification.csv."""
    config = ExperimentConfig(command="verify", steps=steps, out=os.path.join(output_dir, "verification.csv"))
    counts = execute(config)
    if counts["failed"]:
        logger.error(f"{counts['failed']} of {counts['total']} verification checks failed.")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(verify_invariants())
