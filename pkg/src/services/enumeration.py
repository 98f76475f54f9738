from typing import Any, Optional

from factory.data.formatters import parameters_to_dataframe
from factory.data.models import Instance
from formparam.parameters import (
    delta_max,
    delta_min,
    enumerate_form_parameters,
    enumerate_relative_form_parameters,
    omega_max,
    omega_min,
    points_digest,
)
from utils.logging_config import setup_logging, get_logger

# Initialize logging
setup_logging()
logger = get_logger(__name__)


class EnumerationService:
    """Service listing odd form parameters and relative form parameters"""

    @staticmethod
    def form_parameters(instance: Instance, cap: Optional[int] = None) -> dict[str, Any]:
        """
        Every odd form parameter of the instance's quadruple.

        Raises:
            EnumerationOverflowError: more than ``cap`` parameters
        """
        quad = instance.ctx.quad
        parameters = enumerate_form_parameters(quad, cap)
        bottom, top = points_digest(delta_min(quad)), points_digest(delta_max(quad))
        digests = [p.digest for p in parameters]

        return {
            "what": "form-parameters",
            "count": len(parameters),
            "entries": [
                {"index": k, "size": len(p), "digest": p.digest, "generators": [list(g) for g in p.generators]}
                for k, p in enumerate(parameters)
            ],
            "delta_min": bottom,
            "delta_max": top,
            "endpoints_present": bottom in digests and top in digests,
            "tables": {"parameters": parameters_to_dataframe(parameters).to_dict(orient="records")},
        }

    @staticmethod
    def relative(instance: Instance, ideal: frozenset[int], cap: Optional[int] = None) -> dict[str, Any]:
        """
        Every relative form parameter for I.

        Raises:
            EnumerationOverflowError: more than ``cap`` parameters
        """
        delta = instance.ctx.delta
        parameters = enumerate_relative_form_parameters(delta, ideal, cap)
        logger.info(f"📊 {len(parameters)} relative form parameters for |I| = {len(ideal)}")

        return {
            "what": "relative",
            "ideal": sorted(int(x) for x in ideal),
            "count": len(parameters),
            "entries": [
                {"index": k, "size": len(p), "digest": points_digest(p.elements), "generators": [list(g) for g in p.generators]}
                for k, p in enumerate(parameters)
            ],
            "omega_min": points_digest(omega_min(delta, ideal).elements),
            "omega_max": points_digest(omega_max(delta, ideal)),
            "tables": {"parameters": parameters_to_dataframe(parameters).to_dict(orient="records")},
        }
