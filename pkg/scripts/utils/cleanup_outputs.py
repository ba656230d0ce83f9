# scripts/utils/cleanup_outputs.py
import glob
import logging
import os
import sys

# config.py lives at the project root, two levels up from this file
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))
from config import LOG_LEVEL, OUTPUT_DIR

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

# --- Generated artifact patterns ---
# Everything the CLI and the pipeline write: data files, letter words and run sidecars.
ARTIFACT_PATTERNS = ["*.csv", "*.json", "*.txt"]
# -----------------------------------


def find_artifacts(output_dir=OUTPUT_DIR):
    """Generated files under ``output_dir`` (recursively), sorted."""
    found = set()
    for pattern in ARTIFACT_PATTERNS:
        found.update(glob.glob(os.path.join(output_dir, "**", pattern), recursive=True))
    return sorted(found)


def cleanup_outputs(output_dir=OUTPUT_DIR):
    """Deletes generated artifacts and the subdirectories left empty. Returns the number of files removed."""
    if not os.path.isdir(output_dir):
        logger.info(f"Output directory '{output_dir}' does not exist. Nothing to clean up.")
        return 0

    deleted = 0
    for path in find_artifacts(output_dir):
        try:
            os.remove(path)
            deleted += 1
            logger.debug(f"Deleted {path}")
        except OSError as e:
            logger.error(f"Error deleting '{path}': {e}")

    # bottom-up so nested directories empty out first
    for root, dirs, files in os.walk(output_dir, topdown=False):
        if root != output_dir and not os.listdir(root):
            os.rmdir(root)
    logger.info(f"Cleanup complete. Deleted {deleted} files from '{output_dir}'.")
    return deleted


def confirm_and_cleanup(target=OUTPUT_DIR):
    artifacts = find_artifacts(target)
    if not artifacts:
        logger.info(f"No generated files found in '{target}'.")
        return 0
    confirm = input(f"Are you sure you want to delete {len(artifacts)} generated files in '{target}'? [y/N]: ")
    if confirm.lower() == 'y':
        return cleanup_outputs(target)
    logger.info("Cleanup cancelled by user.")
    return 0


if __name__ == "__main__":
    confirm_and_cleanup(sys.argv[1] if len(sys.argv) > 1 else OUTPUT_DIR)
