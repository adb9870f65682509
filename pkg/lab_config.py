"""
Lab configuration loaded from environment variables (and a local .env file).
"""

import logging
import os
import sys

from dotenv import load_dotenv

load_dotenv()


class LabConfig:
    """Central configuration loaded from environment variables."""

    # Oracle caps
    MINOR_CAP = int(os.getenv("DEGENLAB_MINOR_CAP", "10"))
    SUBGRAPH_CAP = int(os.getenv("DEGENLAB_SUBGRAPH_CAP", "12"))
    ISO_CAP = int(os.getenv("DEGENLAB_ISO_CAP", "16"))
    ENUM_CAP = int(os.getenv("DEGENLAB_ENUM_CAP", "7"))
    SWEEP_CAP = int(os.getenv("DEGENLAB_SWEEP_CAP", "12"))

    # Minor-ceiling memo entries kept per process
    MEMO_MAX = int(os.getenv("DEGENLAB_MEMO_MAX", "200000"))

    # Girth clauses on forests
    GIRTH_K_MAX = int(os.getenv("DEGENLAB_GIRTH_K_MAX", "64"))

    # Sweeps
    JOBS = int(os.getenv("DEGENLAB_JOBS", "1"))

    LOG_LEVEL = os.getenv("DEGENLAB_LOG_LEVEL", "INFO").upper()


config = LabConfig()


def configure_logging(level: str = "") -> None:
    """Send log records to stderr so stdout stays machine-readable."""
    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL).upper(), logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
