import logging
import sys

from settings import Settings
SETTINGS = Settings.get_settings()


def setup_logger(
    timestamp: str,
    command: str,
    to_file: bool = True,
    level: int = logging.INFO,
) -> logging.Logger:
    """Setup logger for one run of the command line driver.

    Args:
    - timestamp (str): Current time when starting the run
    - command (str): Subcommand, part of the log file name
    - to_file (bool): Also write runs/logs/<timestamp>_<command>.log
    - level (int): Lowest level that is logged

    Returns:
    - logging.Logger: Configured logger instance, parent of the module loggers
    """
    logger = logging.getLogger(SETTINGS.LOGGER_NAME)
    logger.setLevel(level)
    # Repeated runs in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        SETTINGS.LOG_FORMAT,
        datefmt=SETTINGS.LOG_DATE_FORMAT
    )

    # Console handler, kept off stdout which carries the documents
    ch = logging.StreamHandler(sys.stderr)
    ch.setLevel(level)
    ch.setFormatter(formatter)
    logger.addHandler(ch)

    if to_file:
        log_dir = SETTINGS.LOGS_DIR
        log_dir.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(log_dir / f"{timestamp}_{command}.log")
        fh.setLevel(level)
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    return logger
