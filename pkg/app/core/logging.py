"""
Logging setup driven by application settings.
"""
import logging
import sys

from app.core.config import settings


LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def setup_logging(level: str | None = None) -> None:
    """
    Configure the root logger once for the process.

    Logs go to stderr so that CSV/JSON on stdout stays clean.

    Args:
        level: Level name overriding settings.log_level
    """
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True
    )
