import logging
import os

LOG_LEVEL_ENV = "NCLEBESGUE_LOG_LEVEL"


def setup_logging(level: int | str | None = None):
    if level is None:
        level = os.getenv(LOG_LEVEL_ENV, "INFO")
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    root_logger = logging.getLogger()
    if not root_logger.hasHandlers():
        logging.basicConfig(level=level, format="[%(levelname)s] %(name)s: %(message)s")
    else:
        root_logger.setLevel(level)
