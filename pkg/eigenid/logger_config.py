# logger_config.py

import logging
import logging.handlers
import os
import sys
from typing import Optional, Union


def _level(value: Union[int, str]) -> int:
    if isinstance(value, int):
        return value
    return logging.getLevelName(value.upper())


def init_logger(console_level: Union[int, str] = logging.WARNING,
                file_level: Union[int, str] = logging.DEBUG,
                log_file: Optional[str] = None,
                max_bytes: int = int(0.5 * 1024 * 1024),  # 0.5 MB
                backup_count: int = 5):
    """
    Set up logging configuration.

    Console output goes to stderr so that results printed on stdout stay
    machine readable.

    :param console_level: Logging level for console output.
    :param file_level: Logging level for file output.
    :param log_file: Path to the log file, or None for console only.
    :param max_bytes: Maximum size of log file before rotation.
    :param backup_count: Number of backup files to keep.
    """
    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    if logger.hasHandlers():
        logger.handlers.clear()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(_level(console_level))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file, maxBytes=max_bytes, backupCount=backup_count, encoding='utf-8')
        file_handler.setLevel(_level(file_level))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logging.getLogger('numba').setLevel(logging.WARNING)
