# scripts/lib/io_utils.py
"""Artifact writers: record tables (CSV or JSON), letter words and run sidecars."""
import json
import logging
import os
from datetime import datetime, timezone
from typing import Iterable, List, Optional

import pandas as pd

from config import LOG_LEVEL
from .errors import ConfigError

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

FORMATS = ("csv", "json")
SCHEDULE_COLUMNS = ["m", "alpha_rad"]

# repr-exact round trip of float64
FLOAT_FORMAT = "%.17g"


def _ensure_parent(path: str):
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def sidecar_path(path: str) -> str:
    """``<out>.meta.json`` next to the data file ``<out>.<ext>``."""
    root, _ = os.path.splitext(path)
    return f"{root}.meta.json"


def write_records(path: str, records: Iterable[dict], columns: List[str], fmt: str = "csv") -> int:
    """
    Writes a list of row dicts as CSV (header + one line per record) or as a JSON array of objects.

    Args:
        path (str): Destination file; parent directories are created.
        records (iterable of dict): Keys must cover ``columns``; missing keys become empty cells.
        columns (list of str): Ordered column names.
        fmt (str): "csv" or "json".

    Returns:
        int: Number of records written.

    Raises:
        ConfigError: on an unknown format.
        OSError: if the file cannot be written (logged, then re-raised).
    """
    if fmt not in FORMATS:
        raise ConfigError(f"Unknown output format '{fmt}'. Expected one of {FORMATS}.")

    df = pd.DataFrame.from_records(list(records), columns=columns)
    if df.empty:
        logger.info(f"No records to write to {path}; writing header only.")

    try:
        _ensure_parent(path)
        if fmt == "csv":
            df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        else:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(df.to_dict(orient="records"), f, indent=1)
                f.write("\n")
    except OSError as e:
        logger.error(f"Could not write {len(df)} records to '{path}': {e}")
        raise
    logger.info(f"Wrote {len(df)} records to {path}.")
    return len(df)


def write_letters(path: str, letters: str) -> int:
    """Plain-text word, one letter per character, trailing newline."""
    try:
        _ensure_parent(path)
        with open(path, "w", encoding="ascii") as f:
            f.write(letters + "\n")
    except OSError as e:
        logger.error(f"Could not write letter sequence to '{path}': {e}")
        raise
    logger.info(f"Wrote {len(letters)} letters to {path}.")
    return len(letters)


def write_sidecar(path: str, config: dict, summary: Optional[dict] = None, version: Optional[str] = None) -> str:
    """
    Writes run metadata next to a data file. Data files themselves never carry timestamps.

    Returns:
        str: The sidecar path.
    """
    from scripts import __version__

    meta = {
        "config": config,
        "version": version or __version__,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "summary": summary or {},
    }
    meta_path = sidecar_path(path)
    try:
        _ensure_parent(meta_path)
        with open(meta_path, "w", encoding="utf-8") as f:
            json.dump(meta, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        logger.error(f"Could not write run metadata to '{meta_path}': {e}")
        raise
    logger.debug(f"Wrote run metadata to {meta_path}.")
    return meta_path


def read_sidecar(path: str) -> dict:
    """Loads a ``.meta.json`` file (or the sidecar of a data file)."""
    meta_path = path if path.endswith(".meta.json") else sidecar_path(path)
    with open(meta_path, "r", encoding="utf-8") as f:
        return json.load(f)


def read_records(path: str) -> pd.DataFrame:
    """Reads back a CSV or JSON record file."""
    if path.endswith(".json"):
        return pd.read_json(path, orient="records", precise_float=True)
    return pd.read_csv(path, float_precision="round_trip")


if __name__ == "__main__":
    logger.info("Testing io_utils.py...")
    n = write_records(os.path.join("data", "io_utils_demo.csv"),
                      [{"m": 1, "alpha_rad": 0.1}, {"m": 2, "alpha_rad": 0.2}], SCHEDULE_COLUMNS)
    logger.info(f"Demo file holds {n} rows.")
