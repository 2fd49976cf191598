import logging
from typing import List, Optional, Union

_FACTORY_LOGGERS: List[logging.Logger] = []


def setup_console_and_file_logging(
    logger_name: str = "src.services.default",
    level: Union[int, str] = logging.INFO,
    log_file: Optional[str] = None
):
    """Sets up logging to print logs on the console (stderr) and optionally write to a log file."""

    # Create logger
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)
    logger.propagate = False

    # Define log format
    log_format = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    # Remove existing handlers
    if logger.hasHandlers():
        logger.handlers.clear()

    # Console handler; stdout carries command results
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(log_format)
    logger.addHandler(console_handler)

    # File handler
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(log_format)
        logger.addHandler(file_handler)

    if logger not in _FACTORY_LOGGERS:
        _FACTORY_LOGGERS.append(logger)
    return logger


def set_level(level: Union[int, str]) -> None:
    """Change the level of every logger built by the factory, handlers included."""
    for logger in _FACTORY_LOGGERS:
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)
