import pytest
import sys

import numpy as np

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass, checks_by_name

# Initialize standardized test logger
logger = get_test_logger(__name__)

from rings import build_ring, integers_mod, prime_field, standard_involution, make_odd_quadruple
from formparam import make_form_parameter, omega_max
from unitary import FormsContext, ElementaryFactory, UMatrix, random_products
from sandwich import (
    SubgroupHandle,
    level_of,
    is_E_normal,
    sandwich_check,
    find_unimodular_shift,
    reduce_first_entry,
    reduce_two_columns,
    is_upper_unitriangular,
    has_ueu_support,
    sweep_reductions,
)
from action import m2f2_context, m2f2_block_subgroup, block_diagonal
from domain import Verdict
from utils.errors import BadIndicesError, NoShiftFoundError, ReductionFailedError, SizeMismatchError


Z4 = build_ring(integers_mod(4))


def _f2_context(n):
    ring = build_ring(prime_field(2))
    quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.one, ring.zero)
    return FormsContext(n=n, delta=make_form_parameter(quad, "max"))


class TestUnimodularShifts:
    """Stable range shifts over Z/4"""

    def test_zero_shift_first(self):
        logger.start_test("Shift for an already unimodular head")

        assert find_unimodular_shift(Z4, [2, 1, 3], 2) == 0

        logger.pass_test("x = 0 is tried first")

    def test_nonzero_shift(self):
        # (2, 2) is not unimodular but (2 + 1 * 1, 2) is
        assert find_unimodular_shift(Z4, [2, 2, 1], 2) == 1

    def test_failures(self):
        with pytest.raises(NoShiftFoundError):
            find_unimodular_shift(Z4, [2, 2, 2], 2)
        with pytest.raises(SizeMismatchError):
            find_unimodular_shift(Z4, [1, 2], 2)


class TestReductions:
    """Triangular column reductions"""

    def setup_method(self):
        self.ctx = _f2_context(3)
        self.factory = ElementaryFactory(self.ctx)

    def test_shapes(self):
        e = self.ctx.identity()
        assert is_upper_unitriangular(e) and has_ueu_support(e)

        lower = self.factory.short(-1, 2, 1)
        assert not is_upper_unitriangular(lower)
        assert not has_ueu_support(lower)
        assert is_upper_unitriangular(self.factory.short(1, 2, 1))

    def test_identity_needs_no_moves(self):
        logger.start_test("Reducing the identity")

        result = reduce_first_entry(self.factory, self.ctx.identity())
        assert result.ok
        assert result.f.is_identity()
        assert result.factors == []

        logger.pass_test("f = e")

    def test_first_entry(self):
        logger.start_test("First entry reduction on random products")

        sigmas = random_products(self.factory.reduced_generators(), count=6, length=7, rng=np.random.default_rng(21))
        for sigma in sigmas:
            result = reduce_first_entry(self.factory, sigma)
            assert result.ok, result.certificate.witnesses[:1]
            assert result.reduced == result.f @ sigma
            assert self.ctx.ring.left_inverses(result.reduced.get(1, 1))

        logger.pass_test("Every corner is left invertible after the reduction")

    def test_two_columns(self):
        sigma = random_products(self.factory.reduced_generators(), count=1, length=9, rng=np.random.default_rng(5))[0]
        result = reduce_two_columns(self.factory, sigma)
        assert result.ok, result.certificate.witnesses[:1]
        assert has_ueu_support(result.f)
        assert set(result.to_dict()) >= {"f", "reduced", "factors", "certificate"}

    def test_sweep(self):
        sigmas = random_products(self.factory.reduced_generators(), count=4, length=6, rng=np.random.default_rng(8))
        checks = sweep_reductions(self.factory, sigmas)
        assert [c.name for c in checks] == ["reductions-first-entry", "reductions-two-columns"]
        assert_checks_pass(checks, logger)

    def test_sweep_skips_small_rank(self):
        ctx = _f2_context(2)
        factory = ElementaryFactory(ctx)
        checks = checks_by_name(sweep_reductions(factory, [ctx.identity()]))
        assert checks["reductions-two-columns"].details["skipped"] == "needs n >= 3"
        assert checks["reductions-first-entry"].passed

    def test_bad_inputs(self):
        with pytest.raises(BadIndicesError):
            reduce_two_columns(ElementaryFactory(_f2_context(2)), _f2_context(2).identity())

        # invertible, but mu = 0 forbids a nonzero (1, 0) entry
        not_unitary = UMatrix.from_units(self.ctx.ring, 3, {(1, 0): 1})
        with pytest.raises(ReductionFailedError):
            reduce_first_entry(self.factory, not_unitary)


class TestSubgroups:
    """Subgroup handles, levels and the sandwich"""

    def test_generator_handle(self):
        ctx = _f2_context(2)
        factory = ElementaryFactory(ctx)
        handle = SubgroupHandle.from_generators("T12", ctx, [factory.short(1, 2, 1)])
        assert factory.short(1, 2, 1) in handle
        assert factory.short(2, 1, 1) not in handle
        assert handle.describe()["order"] == 2

        conjugated = handle.conjugated(factory.permutation(1, 2))
        assert factory.short(2, 1, 1) in conjugated

    def test_level_of_elementary_group(self):
        logger.start_test("EU(R, Delta) has level (R, Delta)")

        ctx = _f2_context(2)
        factory = ElementaryFactory(ctx)
        handle = SubgroupHandle.from_generators("EU", ctx, factory.reduced_generators())
        found = level_of(handle)
        assert found.ideal == frozenset(ctx.ring.elements)
        assert found.omega == ctx.delta.elements
        assert found.to_dict()["witnesses"]["ideal"]

        checks = sandwich_check(handle)
        assert_checks_pass(checks, logger)

        logger.pass_test("The sandwich closes at the full level")

    def test_block_subgroup(self):
        logger.start_test("Sandwich for the M2(F2) block subgroup")

        ctx = m2f2_context(3)
        handle = m2f2_block_subgroup(ctx)
        found = level_of(handle)
        zero = frozenset({ctx.ring.zero})
        assert found.ideal == zero
        assert found.omega == frozenset(omega_max(ctx.delta, zero))

        normal, lower, upper = sandwich_check(handle)
        assert normal.verdict == Verdict.PASS
        assert lower.details["method"] == "generators-in-E-normal-H"
        assert lower.passed and upper.passed

        logger.pass_test("E-normal, EU(0, Omega_max) in H in CU(0, Omega_max)")

    def test_block_subgroup_not_normal(self):
        ctx = m2f2_context(3)
        ring = ctx.ring
        handle = m2f2_block_subgroup(ctx)
        sigma = block_diagonal(ctx, ring.parse_element([[0, 1], [1, 0]]))
        tau = block_diagonal(ctx, ring.parse_element([[1, 1], [0, 1]]))
        assert tau in handle
        assert tau.conj(sigma) not in handle
        assert is_E_normal(handle.conjugated(sigma)).passed


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Sandwich Tests")

    results = create_test_results(logger)

    shifts = TestUnimodularShifts()
    results.run_test("zero_shift_first", shifts.test_zero_shift_first)
    results.run_test("nonzero_shift", shifts.test_nonzero_shift)

    reductions = TestReductions()
    reductions.setup_method()
    results.run_test("identity_needs_no_moves", reductions.test_identity_needs_no_moves)
    results.run_test("first_entry", reductions.test_first_entry)

    subgroups = TestSubgroups()
    results.run_test("level_of_elementary_group", subgroups.test_level_of_elementary_group)
    results.run_test("block_subgroup", subgroups.test_block_subgroup)

    sys.exit(0 if results.summary() else 1)
