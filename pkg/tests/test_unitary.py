import pytest
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass, checks_by_name

# Initialize standardized test logger
logger = get_test_logger(__name__)

from rings import build_ring, prime_field, matrix_ring, standard_involution, make_odd_quadruple
from formparam import HPoint, make_form_parameter
from unitary import (
    Theta,
    eps,
    UMatrix,
    FormsContext,
    verify_form_identities,
    certify_unitary,
    is_unitary,
    is_unitary_bruteforce,
    try_is_unitary,
    ElementaryFactory,
    additive_basis,
    verify_relations,
    verify_conjugations,
    RELATION_IDS,
    CONJUGATION_IDS,
    embed_even,
    embed_odd,
    verify_embeddings,
    classical_instance,
    preserves_gram,
    lambda_points,
    verify_unitary_oracles,
    generate_group,
    enumerate_unitary_group,
    short_token,
    extra_token,
    permutation_token,
    matrix_token,
    parse_token,
    evaluate_word,
)
from utils.errors import (
    BadIndicesError,
    CapExceededError,
    ClosureOverflowError,
    IncompatibleBaseError,
    PointNotInParameterError,
    SizeMismatchError,
    SpecInvalidError,
)


def _context(spec, involution, lam, mu, n, delta="max"):
    ring = build_ring(spec)
    quad = make_odd_quadruple(ring, standard_involution(ring, involution), ring.parse_element(lam), ring.parse_element(mu))
    return FormsContext(n=n, delta=make_form_parameter(quad, delta))


class TestTheta:
    """Index bookkeeping"""

    def test_positions(self):
        theta = Theta(2)
        assert theta.order == (1, 2, 0, -2, -1)
        assert [theta.pos(i) for i in theta.order] == [0, 1, 2, 3, 4]
        assert theta.hb == (1, 2, -2, -1)
        assert theta.plus == (1, 2) and theta.minus == (-1, -2)

    def test_bad_indices(self):
        with pytest.raises(BadIndicesError):
            Theta(0)
        with pytest.raises(BadIndicesError):
            Theta(2).pos(3)
        with pytest.raises(BadIndicesError):
            Theta(2).check_pair(1, -1)
        with pytest.raises(BadIndicesError):
            eps(0)

    def test_short_pairs(self):
        assert Theta(1).short_pairs() == []
        assert len(Theta(3).short_pairs()) == 6 * 4


class TestForms:
    """b and q on the odd hyperbolic module"""

    def test_identities_over_f2(self):
        logger.start_test("Form identities over F2, n = 1")

        ctx = _context(prime_field(2), "identity", "one", "zero", n=1)
        checks = verify_form_identities(ctx)
        assert_checks_pass(checks, logger)
        assert all(c.exhaustive for c in checks)

        logger.pass_test("b and q satisfy every identity on all pairs of vectors")

    def test_identities_over_matrix_ring(self):
        ctx = _context(matrix_ring(2, prime_field(2)), "transpose", "one", "zero", n=1)
        checks = verify_form_identities(ctx, samples=300, seed=3)
        assert_checks_pass(checks, logger)
        assert not checks_by_name(checks)["b-hermitian"].exhaustive

    def test_form_values(self):
        ctx = _context(prime_field(3), "identity", "one", 2, n=1, delta="min")
        e1, e0, e_1 = ctx.basis(1), ctx.basis(0), ctx.basis(-1)
        assert ctx.form_b(e1, e_1) == 1
        assert ctx.form_b(e_1, e1) == 1
        assert ctx.form_b(e0, e0) == 2
        assert ctx.form_b(e1, e1) == 0
        assert ctx.form_q(e1 + e_1) == HPoint(0, 1)
        assert ctx.form_q(e0) == HPoint(1, 0)

    def test_gram_matrix(self):
        ctx = _context(prime_field(3), "identity", "one", 2, n=1, delta="min")
        # Basis order (e_1, e_0, e_-1)
        assert ctx.gram.tolist() == [[0, 0, 1], [0, 2, 0], [1, 0, 0]]


class TestElementaryMatrices:
    """Generators and their relations"""

    def setup_method(self):
        self.ctx = _context(prime_field(2), "identity", "one", "zero", n=3)
        self.factory = ElementaryFactory(self.ctx)

    def test_generators_are_unitary(self):
        logger.start_test("Every elementary generator is unitary")

        ctx = _context(prime_field(2), "identity", "one", "zero", n=2)
        generators = ElementaryFactory(ctx).all_generators()
        assert generators
        assert all(is_unitary(ctx, g) for g in generators)

        logger.pass_test(f"{len(generators)} generators certified")

    def test_cached_inverses(self):
        f = self.factory
        t = f.short(1, 2, 1)
        assert (t @ t.inverse()).is_identity()
        assert (f.permutation(1, 2) @ f.permutation(2, 1)).is_identity()
        a = f.extra(-1, (1, 1))
        assert (a @ a.inverse()).is_identity()

    def test_extra_outside_parameter(self):
        ctx = _context(prime_field(2), "identity", "one", "zero", n=1, delta="min")
        with pytest.raises(PointNotInParameterError) as e:
            ElementaryFactory(ctx).extra(-1, (1, 0))
        assert e.value.details["point"] == [1, 0]

    def test_additive_basis(self):
        ring = build_ring(matrix_ring(2, prime_field(2)))
        assert len(additive_basis(ring)) == 4
        assert additive_basis(ring, [0]) == []

    def test_relations_over_f2(self):
        logger.start_test("Elementary relations at n = 3 over F2")

        checks = verify_relations(self.factory, samples=200, seed=1)
        assert [c.name for c in checks] == list(RELATION_IDS)
        assert_checks_pass(checks, logger)

        logger.pass_test("S1 to SE2 hold")

    def test_relations_over_matrix_ring(self):
        logger.start_test("Elementary relations at n = 3 over M2(F2)")

        ctx = _context(matrix_ring(2, prime_field(2)), "transpose", "one", "zero", n=3)
        checks = verify_relations(ElementaryFactory(ctx), samples=60, seed=2)
        assert_checks_pass(checks, logger)

        logger.pass_test("Relations hold over a noncommutative ring")

    def test_conjugations(self):
        checks = verify_conjugations(self.factory, samples=100, seed=4)
        assert [c.name for c in checks] == list(CONJUGATION_IDS)
        assert_checks_pass(checks, logger)

    def test_relations_need_rank_three(self):
        ctx = _context(prime_field(2), "identity", "one", "zero", n=2)
        with pytest.raises(BadIndicesError):
            verify_relations(ElementaryFactory(ctx))

    def test_embeddings(self):
        checks = verify_embeddings(self.ctx, m=2, samples=40, seed=6)
        assert_checks_pass(checks, logger)

        small = FormsContext(n=1, delta=self.ctx.delta)
        assert embed_odd(self.ctx, small.identity()).is_identity()
        block = embed_even(self.ctx, np.array([[1, 1], [0, 1]]))
        assert block.get(1, -1) == 1
        assert block.get(2, -2) == 0 and block.get(3, 3) == 1
        with pytest.raises(SizeMismatchError):
            embed_even(self.ctx, np.eye(3, dtype=int))
        with pytest.raises(SizeMismatchError):
            verify_embeddings(small, m=2)


class TestMembership:
    """Certified and brute-force membership"""

    def setup_method(self):
        self.ctx = _context(prime_field(2), "identity", "one", "zero", n=1)
        self.ring = self.ctx.ring

    def test_non_unitary_matrix(self):
        logger.start_test("e + e^(1,0) is not unitary when mu = 0")

        sigma = UMatrix.from_units(self.ring, 1, {(1, 0): 1})
        certificate = certify_unitary(self.ctx, sigma)
        assert not certificate
        assert certificate.inverse_identities
        assert certificate.to_dict()["unitary"] is False

        verdict, witness = is_unitary_bruteforce(self.ctx, sigma)
        assert not verdict
        assert witness["violation"] in ("b", "q")

        logger.pass_test("Both tests refuse it")

    def test_singular_and_mismatched(self):
        zero = UMatrix(self.ring, np.zeros((3, 3), dtype=np.int64))
        assert not try_is_unitary(self.ctx, zero)
        with pytest.raises(SizeMismatchError):
            is_unitary(self.ctx, UMatrix.identity(self.ring, 2))

    def test_bruteforce_cap(self):
        with pytest.raises(CapExceededError):
            is_unitary_bruteforce(self.ctx, self.ctx.identity(), cap=4)

    def test_oracles_agree_on_sp_f2(self):
        logger.start_test("Membership oracles on every invertible 3 x 3 matrix over F2")

        ctx = classical_instance("Sp-odd", prime_field(2), n=1)
        agreement, gram = verify_unitary_oracles(ctx, compare_gram=True)
        assert agreement.passed and gram.passed
        # GL_3(F2)
        assert agreement.cases == 168
        assert agreement.details["group_order"] == len(enumerate_unitary_group(ctx))

        logger.pass_test(f"{agreement.details['group_order']} unitary matrices, no disagreements")

    def test_oracle_cap(self):
        ctx = classical_instance("GL-odd", prime_field(2), n=1)
        with pytest.raises(CapExceededError) as e:
            verify_unitary_oracles(ctx)
        assert e.value.details["matrices"] == 4**9


class TestClassicalGroups:
    """Classical families as odd unitary groups"""

    def test_gl_odd_order(self):
        logger.start_test("GL-odd over F2 with n = 1 is GL_3(F2)")

        ctx = classical_instance("GL-odd", prime_field(2), n=1)
        group = enumerate_unitary_group(ctx)
        assert len(group) == 168
        assert all(is_unitary(ctx, g) for g in group[:20])

        logger.pass_test("168 elements")

    def test_incompatible_bases(self):
        with pytest.raises(IncompatibleBaseError):
            classical_instance("O-odd", matrix_ring(2, prime_field(2)))
        with pytest.raises(IncompatibleBaseError):
            classical_instance("GL-odd", matrix_ring(2, prime_field(2)))
        with pytest.raises(SpecInvalidError):
            classical_instance("U-odd", prime_field(2))

    def test_lambda_points(self):
        f3 = build_ring(prime_field(3))
        assert lambda_points(f3, f3.one, "min") == frozenset({0})
        assert lambda_points(f3, f3.one, "max") == frozenset({0})
        assert lambda_points(f3, f3.minus_one, "min") == frozenset(f3.elements)

    def test_even_as_odd(self):
        ctx = classical_instance("even-as-odd", prime_field(3), n=2, lam="minus_one", lambda_form="max")
        assert all(p.x == 0 for p in ctx.delta.elements)
        assert len(ctx.delta) == 3
        assert preserves_gram(ctx, ctx.identity())


class TestGroupsAndWords:
    """Closures and generator words"""

    def setup_method(self):
        self.ctx = _context(prime_field(2), "identity", "one", "zero", n=2)
        self.factory = ElementaryFactory(self.ctx)

    def test_generate_group(self):
        t = self.factory.short(1, 2, 1)
        assert len(generate_group([t])) == 2
        with pytest.raises(ClosureOverflowError):
            generate_group([t], cap=1)

    def test_words(self):
        logger.start_test("Evaluating generator words")

        f = self.factory
        assert evaluate_word(f, []).is_identity()
        assert evaluate_word(f, [short_token(1, 2, 1), short_token(1, 2, 1)]).is_identity()
        assert evaluate_word(f, [permutation_token(1, 2)]) == f.permutation(1, 2)
        assert parse_token(f, extra_token(-1, (1, 1))) == f.extra(-1, HPoint(1, 1))

        sigma = f.short(1, -2, 1) @ f.extra(2, (1, 0))
        assert parse_token(f, matrix_token(sigma)) == sigma

        logger.pass_test("Words evaluate left to right")

    def test_bad_tokens(self):
        with pytest.raises(SpecInvalidError):
            parse_token(self.factory, {"T": "rotation"})
        with pytest.raises(SpecInvalidError):
            parse_token(self.factory, {"T": "short", "i": 1})

    @settings(deadline=None, max_examples=30)
    @given(st.lists(st.sampled_from([(1, 2), (2, 1), (1, -2), (-1, 2), (2, -1)]), min_size=1, max_size=6))
    def test_products_stay_unitary(self, pairs):
        word = [short_token(i, j, 1) for i, j in pairs]
        assert is_unitary(self.ctx, evaluate_word(self.factory, word))


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Unitary Group Tests")

    results = create_test_results(logger)

    forms = TestForms()
    results.run_test("identities_over_f2", forms.test_identities_over_f2)

    elementary = TestElementaryMatrices()
    elementary.setup_method()
    results.run_test("generators_are_unitary", elementary.test_generators_are_unitary)
    results.run_test("relations_over_f2", elementary.test_relations_over_f2)

    membership = TestMembership()
    membership.setup_method()
    results.run_test("non_unitary_matrix", membership.test_non_unitary_matrix)
    results.run_test("oracles_agree_on_sp_f2", membership.test_oracles_agree_on_sp_f2)

    classical = TestClassicalGroups()
    results.run_test("gl_odd_order", classical.test_gl_odd_order)

    sys.exit(0 if results.summary() else 1)
