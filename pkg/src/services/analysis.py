from typing import Any, Optional, Sequence

from action.orbits import orbits
from action.scenario import run_m2f2_scenario
from congruence.membership import make_level
from domain import CheckResult
from factory.data.formatters import orbits_to_dataframe
from factory.data.models import Instance
from sandwich.levels import SubgroupHandle, level_of, sandwich_check
from unitary.matrix import UMatrix
from utils.logging_config import setup_logging, get_logger

# Initialize logging
setup_logging()
logger = get_logger(__name__)


class ActionService:
    """Service for orbit computations and the M2(F2) scenario"""

    @staticmethod
    def orbits(
        instance: Instance,
        ideal: frozenset[int],
        witnesses: Sequence[UMatrix] = (),
        cap: Optional[int] = None,
    ) -> tuple[list[CheckResult], dict[str, Any]]:
        partition = orbits(instance.ctx, ideal, witnesses=witnesses, cap=cap)

        extremes = CheckResult(name="orbit-extremes-fixed")
        extremes.record(partition.notes["extremes_fixed"], {"reason": "an actor moves Omega_min or Omega_max"})

        data = partition.to_dict()
        data["witness_count"] = len(witnesses)
        data["tables"] = {"orbits": orbits_to_dataframe(partition).to_dict(orient="records")}
        return [partition.certificate, extremes], data

    @staticmethod
    def scenario(n: int = 3) -> tuple[list[CheckResult], dict[str, Any]]:
        result = run_m2f2_scenario(n=n, strict=False)
        return result.checks, {**result.data, "failed": result.failed}


class SandwichService:
    """Service for levels and sandwich containments of subgroups"""

    @staticmethod
    def check(handle: SubgroupHandle, cap: Optional[int] = None) -> tuple[list[CheckResult], dict[str, Any]]:
        """
        Level of H, then E-normality and both containments at that level.

        Raises:
            CertificationFailedError: the extracted level is not an odd form ideal
            ClosureOverflowError: generator-form H above its cap
        """
        found = level_of(handle)
        level = make_level(handle.ctx, found.form_ideal)
        normal, lower, upper = sandwich_check(handle, level, cap=cap)

        data = {
            "subgroup": handle.describe(),
            "level": found.to_dict(),
            "containments": {"lower": lower.verdict.value, "upper": upper.verdict.value},
            "e_normal": normal.verdict.value,
        }
        return [normal, lower, upper], data
