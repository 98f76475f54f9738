"""
Test Utilities for oddform Tests

Shared logging, result tracking and CheckResult assertions for every test
module, usable both under pytest and by running a test file directly.

Usage:
    from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass

    logger = get_test_logger(__name__)

    def test_relations():
        logger.start_test("Relations over F2")
        assert_checks_pass(verify_relations(factory), logger)
        logger.pass_test("Every relation holds")

Environment Variables:
    ODDFORM_DEBUG: Set to "true" to log every check with its case count
"""

import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

# Direct execution runs from the repository root without pytest.ini
if "src" not in [p.split("/")[-1] for p in sys.path]:
    sys.path.insert(0, "src")

from domain import CheckResult
from utils.logging_config import setup_logging, get_logger

# Initialize logging early for all tests
setup_logging()


class TestLogger:
    """Logger with test lifecycle messages"""

    __test__ = False

    def __init__(self, name: str):
        self.logger = get_logger(name)
        self.current_test: Optional[str] = None

    def start_test(self, description: str) -> None:
        self.current_test = description
        self.logger.info(f"🧪 {description}")

    def pass_test(self, message: Optional[str] = None) -> None:
        self.logger.info(f"✅ SUCCESS: {message or self.current_test or 'Test'}")

    def fail_test(self, message: str, exception: Optional[Exception] = None) -> None:
        suffix = f" - {exception}" if exception else ""
        self.logger.error(f"❌ FAILED: {message}{suffix}")

    def debug(self, message: str) -> None:
        """Only shown when ODDFORM_DEBUG=true"""
        self.logger.debug(message)

    def section(self, title: str) -> None:
        separator = "=" * 60
        self.logger.info(separator)
        self.logger.info(f"📋 {title}")
        self.logger.info(separator)


@dataclass
class TestResults:
    """Pass/fail bookkeeping for the ``__main__`` runners"""

    __test__ = False

    logger: TestLogger
    outcomes: dict[str, Optional[str]] = field(default_factory=dict)

    def run_test(self, name: str, test: Callable, *args, **kwargs) -> bool:
        """Run ``test``; an exception counts as a failure and keeps its message"""
        try:
            test(*args, **kwargs)
            self.outcomes[name] = None

        except Exception as e:
            self.outcomes[name] = f"{type(e).__name__}: {e}"
            self.logger.fail_test(name, e)

        return self.outcomes[name] is None

    def summary(self) -> bool:
        failed = {name: error for name, error in self.outcomes.items() if error is not None}

        self.logger.section("Test Results Summary")
        self.logger.logger.info(f"📊 Tests Run: {len(self.outcomes)}")
        self.logger.logger.info(f"✅ Passed: {len(self.outcomes) - len(failed)}")
        self.logger.logger.info(f"❌ Failed: {len(failed)}")

        for name in self.outcomes:
            status = "❌ FAIL" if name in failed else "✅ PASS"
            self.logger.logger.info(f"  {name.replace('_', ' ')}: {status}")
            if name in failed:
                self.logger.debug(f"    {failed[name]}")

        if failed:
            self.logger.logger.error("❌ SOME TESTS FAILED!")
        else:
            self.logger.logger.info("🎉 ALL TESTS PASSED!")
        return not failed


def get_test_logger(name: str) -> TestLogger:
    return TestLogger(name)


def create_test_results(logger: TestLogger) -> TestResults:
    return TestResults(logger)


# =========================
#      CHECK RESULTS
# =========================
def assert_checks_pass(checks: Iterable[CheckResult], logger: Optional[TestLogger] = None) -> None:
    """
    Assert that every CheckResult passed, naming the failures and their
    first witness otherwise.
    """
    checks = list(checks)
    if logger is not None:
        for check in checks:
            logger.debug(f"{'✅' if check.passed else '❌'} {check.name}: {check.cases} cases, {check.failures} failures")

    failed = [c for c in checks if not c.passed]
    assert not failed, "; ".join(f"{c.name}: {c.failures}/{c.cases} failed, e.g. {c.witnesses[:1]}" for c in failed)


def checks_by_name(checks: Iterable[CheckResult]) -> dict[str, CheckResult]:
    return {c.name: c for c in checks}
