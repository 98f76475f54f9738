from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from action.conjugation import check_conjugated_congruence, check_conjugated_elementary, verify_action_laws
from congruence.checks import verify_congruence_suite
from congruence.commutators import sweep_commutator_columns
from congruence.membership import Level, make_level
from domain import CheckResult
from factory.data.generators import generate_elements
from factory.data.models import Instance, WordParameters
from formparam.checks import verify_quasimodule_identities
from formparam.ideals import enumerate_ideals
from formparam.parameters import enumerate_relative_form_parameters, make_odd_form_ideal
from sandwich.reductions import sweep_reductions
from unitary.classical import verify_unitary_oracles
from unitary.closure import enumerate_unitary_group
from unitary.embeddings import verify_embeddings
from unitary.forms import verify_form_identities
from unitary.matrix import UMatrix
from unitary.membership import is_unitary, is_unitary_bruteforce
from unitary.relations import verify_conjugations, verify_relations
from utils.config import Settings
from utils.errors import CapExceededError, EnumerationOverflowError
from utils.logging_config import setup_logging, get_logger

# Initialize logging
setup_logging()
logger = get_logger(__name__)

SUITES = ("quasimodule", "relations", "membership", "congruence", "reduction", "action")

# Level and conjugator counts kept per suite run when the group is not enumerated
LEVEL_LIMIT = 16
CONJUGATOR_LIMIT = 6


@dataclass(kw_only=True)
class Workload:
    """Elements and levels shared by the suites of one run"""

    instance: Instance
    settings: Settings
    notes: dict = field(default_factory=dict)

    @property
    def ctx(self):
        return self.instance.ctx

    @cached_property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.settings.seed)

    @cached_property
    def full_group(self) -> Optional[list[UMatrix]]:
        """All of U_3(R, Delta) when n = 1 and it is enumerable"""
        if self.ctx.n != 1:
            return None
        try:
            group = enumerate_unitary_group(self.ctx, cap=self.settings.enumeration_cap, limit=self.settings.closure_cap)
            self.notes["group_order"] = len(group)
            return group

        except EnumerationOverflowError as e:
            logger.warning(f"⚠️ Unitary group not enumerable, sampling instead: {e}")
            return None

    @cached_property
    def sampled(self) -> list[UMatrix]:
        """Seeded random products of elementary generators"""
        count = max(min(self.settings.samples // 10, 1000), 20)
        parameters = WordParameters(count=count, max_length=8, random_seed=self.settings.seed)
        return generate_elements(self.instance.factory, parameters)

    @property
    def group(self) -> list[UMatrix]:
        return self.full_group if self.full_group is not None else self.sampled

    @property
    def exhaustive(self) -> bool:
        return self.full_group is not None

    @cached_property
    def ideals(self) -> list[frozenset[int]]:
        if self.instance.ideal is not None:
            return [self.instance.ideal]
        ring, bar = self.ctx.ring, self.ctx.quad.bar
        try:
            return enumerate_ideals(ring, bar, "two", cap=self.settings.enumeration_cap)

        except EnumerationOverflowError:
            logger.warning("⚠️ Too many ideals, using {0} and R only")
            self.notes["ideals_truncated"] = True
            return [frozenset({ring.zero}), frozenset(ring.elements)]

    @cached_property
    def levels(self) -> list[Level]:
        delta = self.ctx.delta
        levels = []
        for ideal in self.ideals:
            for omega in enumerate_relative_form_parameters(delta, ideal, self.settings.enumeration_cap):
                levels.append(make_level(self.ctx, make_odd_form_ideal(delta, ideal, omega)))

        self.notes["levels"] = len(levels)
        if len(levels) <= LEVEL_LIMIT:
            return levels

        # Extremes always stay in; the rest is a seeded sample
        chosen = sorted({0, len(levels) - 1} | set(self.rng.choice(len(levels), LEVEL_LIMIT - 2, replace=False).tolist()))
        self.notes["levels_checked"] = len(chosen)
        return [levels[k] for k in chosen]

    @property
    def levels_complete(self) -> bool:
        return "levels_checked" not in self.notes and "ideals_truncated" not in self.notes

    def conjugators(self) -> tuple[list[UMatrix], bool]:
        """
        Every element of the enumerated group, or a seeded sample of the
        sampled elements. The flag says whether the whole group is covered.
        """
        if self.exhaustive:
            return list(self.full_group), True
        group = self.sampled
        if len(group) <= CONJUGATOR_LIMIT:
            return list(group), False
        chosen = self.rng.choice(len(group), CONJUGATOR_LIMIT, replace=False)
        return [group[int(k)] for k in chosen], False


def merge_checks(results: list[CheckResult]) -> list[CheckResult]:
    """One result per check name, in order of first appearance"""
    merged: dict[str, CheckResult] = {}
    for check in results:
        if check.name not in merged:
            merged[check.name] = CheckResult(name=check.name, details=dict(check.details))
        merged[check.name].absorb(check)
    return list(merged.values())


class VerificationService:
    """Service running the verification suites on one instance"""

    @staticmethod
    def prepare(instance: Instance, settings: Settings) -> Workload:
        return Workload(instance=instance, settings=settings)

    @staticmethod
    def run(workload: Workload, suite: str) -> list[CheckResult]:
        """
        Run one suite or ``all``.

        Raises:
            ValueError: unknown suite name
        """
        if suite == "all":
            results = []
            for name in SUITES:
                results += VerificationService.run(workload, name)
            return results

        runners = {
            "quasimodule": VerificationService.quasimodule,
            "relations": VerificationService.relations,
            "membership": VerificationService.membership,
            "congruence": VerificationService.congruence,
            "reduction": VerificationService.reduction,
            "action": VerificationService.action,
        }
        if suite not in runners:
            raise ValueError(f"Unknown suite '{suite}', expected one of {SUITES + ('all',)}")

        logger.info(f"🚀 Running suite '{suite}' on {workload.instance.digest}")
        results = runners[suite](workload)
        failed = [c.name for c in results if not c.passed]
        if failed:
            logger.error(f"❌ Suite '{suite}': {len(failed)} of {len(results)} checks failed: {failed}")
        else:
            logger.info(f"✅ Suite '{suite}': {len(results)} checks passed")
        return results

    @staticmethod
    def quasimodule(workload: Workload) -> list[CheckResult]:
        ctx, s = workload.ctx, workload.settings
        return verify_quasimodule_identities(ctx.quad, ctx.delta, s.samples, s.seed) + verify_form_identities(ctx, s.samples, s.seed)

    @staticmethod
    def relations(workload: Workload) -> list[CheckResult]:
        ctx, s = workload.ctx, workload.settings
        factory = workload.instance.factory
        results = verify_relations(factory, s.samples, s.seed) + verify_conjugations(factory, s.samples, s.seed)
        if ctx.n >= 2:
            results += verify_embeddings(ctx, ctx.n - 1, seed=s.seed)
        return results

    @staticmethod
    def membership(workload: Workload) -> list[CheckResult]:
        """
        At n = 1 both membership tests run on every invertible matrix; above
        that, on sampled products of generators.
        """
        ctx, s = workload.ctx, workload.settings
        if ctx.n == 1:
            try:
                return verify_unitary_oracles(ctx, compare_gram=workload.instance.config.classical_kind == "Sp-odd", cap=s.closure_cap)

            except CapExceededError as e:
                logger.warning(f"⚠️ Too many matrices for the exhaustive oracle comparison: {e}")

        check = CheckResult(name="unitary-oracle-agreement", exhaustive=False)
        for sigma in workload.sampled:
            fast = is_unitary(ctx, sigma)
            try:
                slow, witness = is_unitary_bruteforce(ctx, sigma, cap=s.enumeration_cap)

            except CapExceededError as e:
                check.truncated = True
                check.details["skipped"] = e.to_dict()
                check.record(fast, lambda: {"matrix": sigma.to_list(), "certified": fast})
                continue

            check.record(fast and slow, lambda: {"matrix": sigma.to_list(), "certified": fast, "witness": witness})
        return [check]

    @staticmethod
    def congruence(workload: Workload) -> list[CheckResult]:
        s = workload.settings
        group = workload.group
        results = []
        for level in workload.levels:
            results += verify_congruence_suite(level, group, s.samples // 10, s.seed, s.enumeration_cap)
        merged = merge_checks(results)

        pairs = max(s.samples // 100, 100)
        merged += sweep_commutator_columns(workload.instance.factory, workload.sampled, pairs, s.seed)
        for check in merged:
            check.details.setdefault("levels", len(workload.levels))
        return merged

    @staticmethod
    def reduction(workload: Workload) -> list[CheckResult]:
        if workload.ctx.n < 2:
            return []
        return sweep_reductions(workload.instance.factory, workload.sampled)

    @staticmethod
    def action(workload: Workload) -> list[CheckResult]:
        """
        Action laws per ideal; exact subgroup comparisons when the whole group
        is enumerated, generator pushes otherwise.
        """
        ctx, s = workload.ctx, workload.settings
        group = workload.group
        results = []
        for ideal in workload.ideals:
            results += verify_action_laws(ctx, ideal, group, samples=s.samples // 10, seed=s.seed, oracle_cap=s.enumeration_cap)

        levels = workload.levels
        conjugators, complete = workload.conjugators()
        complete = complete and workload.levels_complete
        closures: dict = {}
        conjugated = []
        for level in levels:
            for sigma in conjugators:
                if workload.exhaustive:
                    conjugated += check_conjugated_congruence(sigma, level, group)
                    conjugated += check_conjugated_elementary(sigma, level, group, cap=s.closure_cap, closures=closures)
                else:
                    conjugated += check_conjugated_congruence(sigma, level, samples=max(s.samples // 1000, 5), seed=s.seed)

        conjugated = merge_checks(conjugated)
        for check in conjugated:
            check.details.update({"conjugators": len(conjugators), "levels": len(levels)})
            if not complete:
                check.exhaustive = False

        merged = merge_checks(results) + conjugated
        if "group_order" in workload.notes:
            for check in merged:
                check.details["group_order"] = workload.notes["group_order"]
        return merged
