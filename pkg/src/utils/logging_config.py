"""
Centralized Logging Configuration for oddform

This module provides a unified logging configuration that:
1. Respects the ODDFORM_DEBUG environment variable for debug logging
2. Uses consistent formatting across the entire codebase
3. Keeps a short in-memory buffer of warnings so reports can attach them

Usage:
    from utils.logging_config import setup_logging, get_logger

    # Initialize logging (typically done once per module)
    setup_logging()
    logger = get_logger(__name__)

    logger.debug("Debug message - only shown when ODDFORM_DEBUG=true")
    logger.info("Info message - always shown")

Environment Variables:
    ODDFORM_DEBUG: Set to "true" to enable debug logging
"""

import os, sys, logging, threading

from typing import Optional

from collections import deque


DEBUG_ENV_VAR = "ODDFORM_DEBUG"


class LogCapture:
    """Capture warnings and errors emitted during a run"""

    def __init__(self, max_lines: int = 200):
        self.max_lines = max_lines
        self.log_buffer = deque(maxlen=max_lines)
        self.lock = threading.Lock()

    def add_log(self, record: logging.LogRecord):
        """Add a record to the buffer (WARNING and above only)"""
        if record.levelno < logging.WARNING:
            return

        formatted_log = f"{record.levelname}: {record.name}: {record.getMessage()}"

        with self.lock:
            self.log_buffer.append(formatted_log)

    def clear(self):
        with self.lock:
            self.log_buffer.clear()

    def get_recent_logs(self, count: int = 50) -> list:
        """Get recent captured records"""
        with self.lock:
            return list(self.log_buffer)[-count:]


class CaptureLogHandler(logging.Handler):
    """Log handler feeding the global LogCapture"""

    def __init__(self, log_capture: LogCapture):
        super().__init__()
        self.log_capture = log_capture

    def emit(self, record):
        try:
            self.log_capture.add_log(record)
        except Exception:
            self.handleError(record)


# Global log capture instance
_log_capture = LogCapture()
_capture_handler = None
_console_handler = None


def setup_logging(level: Optional[str] = None) -> None:
    """
    Set up centralized logging configuration for the application.

    Args:
        level: Override the logging level. If None, uses ODDFORM_DEBUG environment variable.
    """
    global _capture_handler, _console_handler

    # Determine logging level
    if level is not None:
        log_level = getattr(logging, level.upper(), logging.INFO)
    else:
        log_level = logging.DEBUG if is_debug_enabled() else logging.INFO

    root_logger = logging.getLogger()

    # Only configure if not already configured
    if not root_logger.handlers or _capture_handler is None:
        root_logger.handlers.clear()

        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

        # Console handler for terminal output; stderr keeps stdout free for JSON reports
        _console_handler = logging.StreamHandler(sys.stderr)
        _console_handler.setLevel(log_level)
        _console_handler.setFormatter(formatter)

        _capture_handler = CaptureLogHandler(_log_capture)
        _capture_handler.setLevel(logging.WARNING)

        root_logger.setLevel(logging.DEBUG)

        root_logger.addHandler(_console_handler)
        root_logger.addHandler(_capture_handler)

    elif level is not None and _console_handler is not None:
        # Explicit override after first configuration (e.g. CLI --debug)
        _console_handler.setLevel(log_level)

    logger = logging.getLogger(__name__)
    logger.debug(f"Debug logging enabled via {DEBUG_ENV_VAR} environment variable")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Name for the logger, typically __name__

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)


def is_debug_enabled() -> bool:
    """Check if debug logging is enabled via environment variable."""
    return os.getenv(DEBUG_ENV_VAR, "false").lower() == "true"


def get_log_capture() -> LogCapture:
    """Get the global log capture instance"""
    return _log_capture
