#!/usr/bin/env python3
"""
Logging configuration for the chordspace tools.
File logging with rotation under logs/, console output only in debug mode.
"""

import logging
import logging.handlers
from datetime import datetime
from pathlib import Path


LOGS_DIR = Path(__file__).parent / "logs"

LOG_FORMAT = '[%(asctime)s] %(name)s [%(levelname)s]: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
MAX_LOG_BYTES = 10 * 1024 * 1024  # 10 MB
BACKUP_COUNT = 5


def _rotating_handler(log_file: str, level, formatter) -> logging.Handler:
    LOGS_DIR.mkdir(exist_ok=True)
    handler = logging.handlers.RotatingFileHandler(
        LOGS_DIR / log_file,
        maxBytes=MAX_LOG_BYTES,
        backupCount=BACKUP_COUNT,
        encoding='utf-8'
    )
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def setup_logger(name: str, log_file: str, level=logging.INFO,
                 console_output: bool = True, file_output: bool = True):
    """
    Set up a logger with file and/or console (stderr) handlers.

    Args:
        name: Logger name (e.g., 'chordspace')
        log_file: Log file name under logs/ (e.g., 'chordspace.log')
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        console_output: Enable console output (default: True)
        file_output: Enable file output (default: True)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Reconfiguring an existing logger only adjusts levels
    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    formatter = logging.Formatter(fmt=LOG_FORMAT, datefmt=DATE_FORMAT)

    if file_output:
        logger.addHandler(_rotating_handler(log_file, level, formatter))

    if console_output:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    # stdout carries json; nothing should leak to the root logger's handlers
    logger.propagate = False
    return logger


def setup_error_logger(name: str, error_log_file: str):
    """
    Set up a separate error logger for ERROR and CRITICAL messages only.

    Args:
        name: Logger name (e.g., 'chordspace_errors')
        error_log_file: Error log file name (e.g., 'chordspace_error.log')

    Returns:
        Configured error logger instance
    """
    error_logger = logging.getLogger(name)
    error_logger.setLevel(logging.ERROR)

    if error_logger.handlers:
        return error_logger

    formatter = logging.Formatter(
        fmt=LOG_FORMAT + '\nLocation: %(pathname)s:%(lineno)d in %(funcName)s\n',
        datefmt=DATE_FORMAT
    )
    error_logger.addHandler(_rotating_handler(error_log_file, logging.ERROR, formatter))
    error_logger.propagate = False
    return error_logger


def get_chordspace_logger(debug: bool = False):
    """
    Get configured loggers for the chordspace cli.

    Library modules log to children of 'chordspace' (chordspace.hmeasure, ...),
    so their records end up in the same file.

    Args:
        debug: Enable DEBUG level logging and console output (default: False)

    Returns:
        Tuple of (main_logger, error_logger)
    """
    level = logging.DEBUG if debug else logging.INFO

    main_logger = setup_logger(
        name='chordspace',
        log_file='chordspace.log',
        level=level,
        console_output=debug,  # Only show console in debug mode
        file_output=True
    )

    error_logger = setup_error_logger(
        name='chordspace_errors',
        error_log_file='chordspace_error.log'
    )

    return main_logger, error_logger


def log_startup_info(logger, app_name: str, version: str = "1.0.0"):
    """Log startup information."""
    logger.info("=" * 70)
    logger.info(f"{app_name} Starting")
    logger.info(f"Version: {version}")
    logger.info(f"Time: {datetime.now().strftime(DATE_FORMAT)}")
    logger.info(f"Logs directory: {LOGS_DIR.absolute()}")
    logger.info("=" * 70)


def log_exception(logger, error_logger, exception: Exception, context: str = ""):
    """
    Log an exception to both main and error logs.

    Args:
        logger: Main logger
        error_logger: Error logger
        exception: Exception to log
        context: Where the error occurred (e.g., the subcommand)
    """
    msg = f"{context}: {type(exception).__name__}: {str(exception)}" if context else str(exception)
    logger.error(msg, exc_info=True)
    error_logger.error(msg, exc_info=True)


if __name__ == "__main__":
    main_logger, error_logger = get_chordspace_logger(debug=True)
    log_startup_info(main_logger, "chordspace logging test")
    logging.getLogger("chordspace.hmeasure").debug("child logger reaches the chordspace handlers")
    try:
        raise ValueError("Test exception")
    except Exception as e:
        log_exception(main_logger, error_logger, e, "Test exception context")
    print(f"✓ Check log files in: {LOGS_DIR.absolute()}")
