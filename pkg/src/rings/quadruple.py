from dataclasses import dataclass
from typing import Any

import numpy as np

from rings.finite_ring import FiniteRing
from rings.involution import Involution
from utils.errors import MuConstraintError, NotASymmetryError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

# Witnesses listed per violated law
MAX_WITNESSES = 5


@dataclass(frozen=True, kw_only=True)
class OddQuadruple:
    """A ring with involution, symmetry lam and the distinguished element mu"""

    ring: FiniteRing
    bar: Involution
    lam: int
    mu: int

    @property
    def lam_bar(self) -> int:
        return self.bar(self.lam)

    def lam_pow(self, exponent: int) -> int:
        """lam**exponent for exponent in {-1, 0, 1}; lam**-1 is bar(lam)"""
        match exponent:
            case 0:
                return self.ring.one
            case 1:
                return self.lam
            case -1:
                return self.lam_bar
            case _:
                raise ValueError(f"Only exponents -1, 0, 1 occur, got {exponent}")

    def underbar(self, x: int) -> int:
        """The involution of the inverse quadruple: bar(lam) bar(x) lam"""
        return self.ring.m(self.lam_bar, self.bar(x), self.lam)

    def describe(self) -> dict[str, Any]:
        return {
            "ring": self.ring.spec.label(),
            "involution": self.bar.name,
            "lambda": self.ring.render(self.lam),
            "mu": self.ring.render(self.mu),
        }


def quadruple_violations(ring: FiniteRing, bar: Involution, lam: int, mu: int) -> dict[str, list]:
    """
    Exhaustive report of the quadruple laws broken by (ring, bar, lam, mu).

    Keys: ``not-a-symmetry`` (bar(bar(x)) != lam x bar(lam), or bar(lam) is not
    the inverse of lam) and ``mu-constraint-failed`` (mu != bar(mu) lam).
    Values list witnesses; an empty dict means the quadruple is valid.
    """
    report: dict[str, list] = {}
    mul = ring.mul
    table = bar.table
    lam_bar = bar(lam)

    twisted = mul[mul[lam], lam_bar]
    bad = np.nonzero(table[table] != twisted)[0]
    symmetry_witnesses = [{"x": int(x)} for x in bad[:MAX_WITNESSES]]
    if ring.m(lam_bar, lam) != ring.one or ring.m(lam, lam_bar) != ring.one:
        symmetry_witnesses.append({"lambda": lam, "bar_lambda": lam_bar, "reason": "bar(lambda) is not lambda^-1"})
    if symmetry_witnesses:
        report["not-a-symmetry"] = symmetry_witnesses

    if mu != ring.m(bar(mu), lam):
        report["mu-constraint-failed"] = [{"mu": mu, "bar_mu_lambda": ring.m(bar(mu), lam)}]

    return report


def make_odd_quadruple(ring: FiniteRing, bar: Involution, lam: int, mu: int) -> OddQuadruple:
    """
    Validate and bundle an odd quadruple.

    Raises:
        NotASymmetryError: bar is not a lam-symmetric involution
        MuConstraintError: mu != bar(mu) lam
    """
    report = quadruple_violations(ring, bar, lam, mu)

    if "not-a-symmetry" in report:
        raise NotASymmetryError(
            f"bar(bar(x)) != lam x bar(lam) on {ring.spec.label()} for lam={ring.render(lam)}",
            details=report,
        )
    if "mu-constraint-failed" in report:
        raise MuConstraintError(
            f"mu={ring.render(mu)} does not satisfy mu = bar(mu) lam",
            details=report,
        )

    return OddQuadruple(ring=ring, bar=bar, lam=lam, mu=mu)


def inverse_quadruple(quad: OddQuadruple) -> OddQuadruple:
    """(R, underbar, underbar(lam), underbar(mu)) with underbar(x) = bar(lam) bar(x) lam"""
    ring = quad.ring
    table = ring.mul[ring.mul[quad.lam_bar, quad.bar.table], quad.lam]
    underbar = Involution(name=f"{quad.bar.name}~", table=table)

    return make_odd_quadruple(ring, underbar, quad.underbar(quad.lam), quad.underbar(quad.mu))
