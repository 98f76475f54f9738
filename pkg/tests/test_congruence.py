import pytest
import sys

import numpy as np

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass, checks_by_name

# Initialize standardized test logger
logger = get_test_logger(__name__)

from rings import build_ring, integers_mod, prime_field, standard_involution, make_odd_quadruple
from formparam import make_form_parameter, full_level, trivial_level, defined_ideal
from unitary import FormsContext, ElementaryFactory, enumerate_unitary_group, generate_group, random_products
from congruence import (
    make_level,
    in_principal,
    is_principal,
    in_principal_bruteforce,
    congruence_to_identity,
    in_tilde,
    is_tilde,
    is_CU,
    in_CU,
    eu_level_generators,
    eu_level_normal_closure,
    verify_congruence_suite,
    sweep_commutator_columns,
)
from utils.errors import CapExceededError, SizeMismatchError


def _context(spec, mu, n, delta="max"):
    ring = build_ring(spec)
    quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.one, ring.parse_element(mu))
    return FormsContext(n=n, delta=make_form_parameter(quad, delta))


class TestMembership:
    """U, U~ and CU on single matrices"""

    def setup_method(self):
        self.ctx = _context(prime_field(2), "zero", n=1)
        self.factory = ElementaryFactory(self.ctx)
        self.full = make_level(self.ctx, full_level(self.ctx.delta))
        self.trivial = make_level(self.ctx, trivial_level(self.ctx.delta))

    def test_identity_everywhere(self):
        e = self.ctx.identity()
        for level in (self.full, self.trivial):
            assert is_principal(e, level)
            assert is_tilde(e, level)
            assert is_CU(e, level)
            assert congruence_to_identity(e, level).ok

    def test_long_root_element(self):
        logger.start_test("T_-1(0, 1) at the trivial and the full level")

        t = self.factory.long(-1, 1)
        assert is_principal(t, self.full)

        certificate = in_principal(t, self.trivial)
        assert not certificate
        assert certificate.violations[0]["condition"] == "hb-mod-I"
        assert certificate.to_dict()["member"] is False

        # J(Omega_min) = {0} puts every unitary matrix into U~
        assert is_tilde(t, self.trivial)

        logger.pass_test("Only the full level contains it; U~ of the trivial level does")

    def test_cu_records_generator_count(self):
        certificate = in_CU(self.ctx.identity(), self.full)
        assert certificate.subgroup == "CU"
        assert certificate.notes["generators"] == len(self.factory.reduced_generators())

    def test_bruteforce_cap(self):
        with pytest.raises(CapExceededError):
            in_principal_bruteforce(self.ctx.identity(), self.full, cap=1)

    def test_mismatched_level(self):
        smaller = make_form_parameter(self.ctx.delta.quad, "min")
        with pytest.raises(SizeMismatchError):
            make_level(self.ctx, trivial_level(smaller))
        with pytest.raises(SizeMismatchError):
            in_tilde(FormsContext(n=2, delta=self.ctx.delta).identity(), self.full)


class TestPreelementary:
    """EU(I, Omega) and its normal closure"""

    def setup_method(self):
        self.ctx = _context(prime_field(2), "zero", n=1)
        self.factory = ElementaryFactory(self.ctx)

    def test_trivial_level_closure(self):
        level = make_level(self.ctx, trivial_level(self.ctx.delta))
        assert eu_level_generators(level) == []

        closure = eu_level_normal_closure(level, materialize=True)
        assert closure.elements == frozenset({self.ctx.identity()})
        assert closure.summary()["order"] == 1

    def test_full_level_closure(self):
        logger.start_test("Normal closure of EU(R, Delta) is EU(R, Delta)")

        level = make_level(self.ctx, full_level(self.ctx.delta))
        closure = eu_level_normal_closure(level, materialize=True)
        eu = generate_group(self.factory.all_generators())
        assert closure.elements == eu
        assert self.ctx.identity() in closure

        logger.pass_test(f"|EU| = {len(eu)}")

    def test_unmaterialized_closure(self):
        level = make_level(self.ctx, full_level(self.ctx.delta))
        closure = eu_level_normal_closure(level)
        assert closure.elements is None
        with pytest.raises(ValueError):
            self.ctx.identity() in closure

    def test_truncated_closure(self):
        # At n = 2, T_21(1) T_12(1) T_21(1)^-1 is not a generator
        ctx = _context(prime_field(2), "zero", n=2)
        level = make_level(ctx, full_level(ctx.delta))
        closure = eu_level_normal_closure(level, cap=2)
        assert closure.truncated
        assert closure.summary()["truncated"] is True


class TestCongruenceSuite:
    """Every congruence check on whole groups of rank one"""

    def test_suite_over_f2(self):
        logger.start_test("Congruence suite over F2, n = 1")

        ctx = _context(prime_field(2), "zero", n=1)
        group = enumerate_unitary_group(ctx)
        for form_ideal in (trivial_level(ctx.delta), full_level(ctx.delta)):
            checks = verify_congruence_suite(make_level(ctx, form_ideal), group, samples=400, seed=2)
            assert_checks_pass(checks, logger)

        logger.pass_test("Both extreme levels pass")

    def test_suite_over_z4(self):
        logger.start_test("Congruence suite over Z/4 with mu = 2 at I = 2Z/4")

        ctx = _context(integers_mod(4), 2, n=1)
        level = make_level(ctx, defined_ideal(ctx.delta, [2]))
        assert level.ideal == frozenset({0, 2})

        group = enumerate_unitary_group(ctx)
        checks = verify_congruence_suite(level, group, samples=400, seed=3)
        assert_checks_pass(checks, logger)

        by_name = checks_by_name(checks)
        assert by_name["tilde-normalizes-principal"].details["group_size"] == len(group)

        logger.pass_test(f"{len(checks)} checks over {len(group)} group elements")


class TestCommutatorColumns:
    """Column identities of [sigma, T]"""

    def test_sweep_over_f2(self):
        logger.start_test("Commutator column identities at n = 2")

        ctx = _context(prime_field(2), "zero", n=2)
        factory = ElementaryFactory(ctx)
        sigmas = random_products(factory.reduced_generators(), count=8, length=5, rng=np.random.default_rng(11))
        checks = sweep_commutator_columns(factory, sigmas, pairs=60, seed=3)
        assert {c.name for c in checks} == {"commutator-columns-short", "commutator-columns-extra"}
        assert_checks_pass(checks, logger)

        logger.pass_test("Every displayed column identity holds")


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Congruence Subgroup Tests")

    results = create_test_results(logger)

    membership = TestMembership()
    membership.setup_method()
    results.run_test("identity_everywhere", membership.test_identity_everywhere)
    results.run_test("long_root_element", membership.test_long_root_element)

    preelementary = TestPreelementary()
    preelementary.setup_method()
    results.run_test("full_level_closure", preelementary.test_full_level_closure)

    suite = TestCongruenceSuite()
    results.run_test("suite_over_f2", suite.test_suite_over_f2)
    results.run_test("suite_over_z4", suite.test_suite_over_z4)

    sys.exit(0 if results.summary() else 1)
