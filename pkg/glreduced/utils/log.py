"""
Console logging with the tagged format used across the toolkit:
[INFO] ..., [WARN] ..., [ERROR] ...
"""

import logging
import sys

_CONFIGURED = False


def setup_logging(verbose: bool = False) -> None:
    """Attach one stderr handler to the package logger (idempotent)"""
    global _CONFIGURED
    logger = logging.getLogger("glreduced")
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    if _CONFIGURED:
        return

    logging.addLevelName(logging.WARNING, "WARN")
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("[%(levelname)s] %(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    _CONFIGURED = True
