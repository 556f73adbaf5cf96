# core/logging_config.py

import os
import logging
import logging.handlers
from typing import Dict, Optional, Union

CHANNELS = ("oracle", "certificates")


def setup_logging(log_level: Union[int, str] = logging.WARNING, log_dir: Optional[str] = None) -> Dict[str, logging.Logger]:
    """
    Set up console logging and, when a directory is given, rotating log files.

    Args:
        log_level: Logging level, as a number or a name such as "INFO"
        log_dir: Directory for app.log, error.log and the channel logs
            (oracle.log, certificates.log); console only when None
    """
    if isinstance(log_level, str):
        log_level = logging.getLevelName(log_level.upper())
        if not isinstance(log_level, int):
            log_level = logging.WARNING

    detailed_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    simple_formatter = logging.Formatter(
        '%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # Clear any existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    # Console goes to stderr so command output on stdout stays clean
    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(simple_formatter)
    root_logger.addHandler(console_handler)

    loggers = {'app': root_logger}

    if log_dir is None:
        for channel in CHANNELS:
            channel_logger = logging.getLogger(channel)
            for handler in channel_logger.handlers[:]:
                channel_logger.removeHandler(handler)
            channel_logger.propagate = True
            loggers[channel] = channel_logger
        return loggers

    if not os.path.exists(log_dir):
        os.makedirs(log_dir)

    app_handler = logging.handlers.RotatingFileHandler(
        filename=os.path.join(log_dir, 'app.log'),
        maxBytes=10 * 1024 * 1024,  # 10MB
        backupCount=5,
        encoding='utf-8'
    )
    app_handler.setLevel(log_level)
    app_handler.setFormatter(detailed_formatter)
    root_logger.addHandler(app_handler)

    error_handler = logging.handlers.RotatingFileHandler(
        filename=os.path.join(log_dir, 'error.log'),
        maxBytes=5 * 1024 * 1024,  # 5MB
        backupCount=3,
        encoding='utf-8'
    )
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(detailed_formatter)
    root_logger.addHandler(error_handler)

    # Exhaustive searches are chatty; they get their own files
    for channel in CHANNELS:
        channel_logger = logging.getLogger(channel)
        for handler in channel_logger.handlers[:]:
            channel_logger.removeHandler(handler)
        channel_handler = logging.handlers.RotatingFileHandler(
            filename=os.path.join(log_dir, f'{channel}.log'),
            maxBytes=5 * 1024 * 1024,  # 5MB
            backupCount=2,
            encoding='utf-8'
        )
        channel_handler.setLevel(logging.DEBUG)
        channel_handler.setFormatter(detailed_formatter)
        channel_logger.addHandler(channel_handler)
        channel_logger.setLevel(logging.DEBUG)
        channel_logger.propagate = False
        loggers[channel] = channel_logger

    logging.info(f"Logging configured - Level: {logging.getLevelName(log_level)}, Directory: {log_dir}")
    logging.info(f"Log files: app.log, error.log, {', '.join(c + '.log' for c in CHANNELS)}")

    return loggers


def get_logger(name):
    """Get a logger with the specified name."""
    return logging.getLogger(name)
