"""
Utils package for common utilities and helper functions.

This module contains logging configuration, environment-driven settings and
the exception hierarchy shared by every oddform package.
"""

from .logging_config import setup_logging, get_logger, is_debug_enabled
from .config import Settings, SETTINGS, load_settings
from .errors import OddformError

__all__ = [
    # Logging utilities
    "setup_logging",
    "get_logger",
    "is_debug_enabled",
    # Configuration utilities
    "Settings",
    "SETTINGS",
    "load_settings",
    # Errors
    "OddformError",
]
