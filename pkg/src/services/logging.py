import logging

from domain import Report
from utils.logging_config import setup_logging, get_logger, get_log_capture, is_debug_enabled

# Initialize logging
setup_logging()
logger = get_logger(__name__)


class LoggingService:
    """Service attaching the warnings of one command run to its report"""

    def __init__(self):
        self.log_capture = get_log_capture()

    def configure(self, debug: bool = False) -> None:
        """Switch the console to DEBUG for this process when requested"""
        if debug or is_debug_enabled():
            setup_logging("DEBUG")
            logger.debug("Console logging configured for DEBUG level")

    def start_run(self) -> None:
        """Forget warnings from earlier runs in this process"""
        self.log_capture.clear()

    def attach(self, report: Report, count: int = 50) -> Report:
        """Copy captured warnings into ``report.warnings``"""
        report.warnings = self.log_capture.get_recent_logs(count)
        if report.warnings:
            logger.debug(f"Attached {len(report.warnings)} warnings to the {report.command} report")
        return report

    @staticmethod
    def level_name() -> str:
        return logging.getLevelName(logging.getLogger().getEffectiveLevel())
