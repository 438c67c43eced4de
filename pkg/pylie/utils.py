"""
utils.py

This module provides console status lines, the dated run log, report tables
and seed derivation shared by the verification commands.
"""
import os
import sys
import hashlib
import datetime
from importlib.resources import files

import pandas as pd # type: ignore

from .config import LOG_CONFIG


def status(message, ok=True, io=True):
    """Print a one-line status with a pass/fail marker."""
    if io:
        print(("✅ " if ok else "❌ ") + message)


def warn(message, io=True):
    """Print a warning line to stderr."""
    if io:
        print("⚠️ " + message, file=sys.stderr)


def log_run(title, body, log_dir=None, enabled=None):
    """
    Append a block to today's run log under ~/pl_logs/YYYY/MM/.

    Args:
        title (str): First line of the block, usually the command line.
        body (str): Free text; written verbatim.
        log_dir (str or None): Root directory. Defaults to LOG_CONFIG()["log_dir"].
        enabled (bool or None): Overrides LOG_CONFIG()["enabled"].

    Returns:
        str or None: Path of the log file, or None when logging is off.
    """
    settings = LOG_CONFIG()
    if enabled is None:
        enabled = settings.get("enabled", True)
    if not enabled:
        return None

    logs_dir = os.path.normpath(os.path.expanduser(log_dir or settings.get("log_dir", "~/pl_logs")))
    now = datetime.datetime.now()
    month_dir = os.path.join(logs_dir, now.strftime("%Y"), now.strftime("%m"))
    os.makedirs(month_dir, exist_ok=True)
    log_file_path = os.path.join(month_dir, f"logs_{now.strftime('%Y_%m_%d')}.txt")

    with open(log_file_path, "a", encoding="utf-8") as log_file:
        log_file.write("\n\n" + "-" * 70 + "\n")
        log_file.write(f"{now.strftime('%Y-%m-%d %H:%M:%S')}\n")
        log_file.write("-" * 70 + "\n")
        log_file.write("\n" + title + "\n\n")
        log_file.write(body + "\n")
    return log_file_path


def records_to_df(records):
    """
    Flatten report records into a DataFrame for text output.

    Nested dicts become dotted columns (dims.gxi, propP.status); lists are
    joined with commas.

    Args:
        records (list of dict): Report records.

    Returns:
        pd.DataFrame: One row per record.
    """
    df = pd.json_normalize(records, sep=".")
    for col in df.columns:
        df[col] = df[col].map(lambda v: ",".join(str(x) for x in v) if isinstance(v, (list, tuple)) else v)
    return df


def derive_seed(seed, label):
    """Per-label seed: seed XOR the first 32 bits of sha256(label)."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int(seed) ^ int.from_bytes(digest[:4], "big")


def bundled_catalog_path():
    """Location of the orbit catalog shipped with the package."""
    return files("pylie") / "data" / "exceptional.cat"
