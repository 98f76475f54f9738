"""
Services module for oddform command logic.

This module contains the command logic separated from the CLI handlers.
"""

from .logging import LoggingService
from .verification import VerificationService, Workload, SUITES, merge_checks
from .enumeration import EnumerationService
from .analysis import ActionService, SandwichService

__all__ = [
    "LoggingService",
    "VerificationService",
    "Workload",
    "SUITES",
    "merge_checks",
    "EnumerationService",
    "ActionService",
    "SandwichService",
]
