"""
Logging setup. Library modules only call ``logging.getLogger(__name__)``;
entry points call ``configure_logging`` once.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from .config import settings

_HANDLER_NAME = "qweyl-rich"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Attach a rich handler (stderr) to the package logger.

    stdout is left alone because the CLI writes its artifacts there.
    Calling this twice only updates the level.
    """
    logger = logging.getLogger("qweyl")
    logger.setLevel((level or settings.log_level).upper())

    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
        logger.propagate = False

    return logger
