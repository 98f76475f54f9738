import pytest
import sys

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass, checks_by_name

# Initialize standardized test logger
logger = get_test_logger(__name__)

from rings import build_ring, integers_mod, prime_field, standard_involution, make_odd_quadruple
from formparam import HPoint, make_form_parameter, make_odd_form_ideal, enumerate_relative_form_parameters, enumerate_ideals
from unitary import FormsContext, enumerate_unitary_group
from congruence import make_level, in_tilde
from action import (
    conj_form_parameter,
    conj_level,
    conj_by_vectors,
    verify_action_laws,
    check_conjugated_congruence,
    check_conjugated_elementary,
    rofp_lattice,
    orbits,
    m2f2_context,
    right_ideal,
    block_diagonal,
    run_m2f2_scenario,
)
from factory.data import build_instance
from services import VerificationService
from utils.config import Settings
from utils.errors import BadIndicesError, CapExceededError


def _z4_context():
    ring = build_ring(integers_mod(4))
    quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.one, 2)
    return FormsContext(n=1, delta=make_form_parameter(quad, "max"))


def _rank_one_context(p):
    """Identity involution, lambda = 1, mu = 0, Delta_max, n = 1 over F_p"""
    ring = build_ring(prime_field(p))
    quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.one, ring.zero)
    return FormsContext(n=1, delta=make_form_parameter(quad, "max"))


F2_RANK_ONE = {"ring": {"kind": "prime_field", "p": 2}, "involution": "identity", "lambda": 1, "mu": 0, "delta": "max", "n": 1}


class TestConjugationAction:
    """^sigma Omega on the relative parameters of Z/4 with mu = 2"""

    def setup_method(self):
        self.ctx = _z4_context()
        self.ideal = frozenset({0, 2})
        self.group = enumerate_unitary_group(self.ctx)
        self.parameters = enumerate_relative_form_parameters(self.ctx.delta, self.ideal)

    def test_action_laws(self):
        logger.start_test("Action laws over U_3(Z/4, Delta_max)")

        checks = verify_action_laws(self.ctx, self.ideal, self.group, self.parameters, samples=300, seed=4)
        assert_checks_pass(checks, logger)

        logger.pass_test(f"{len(checks)} laws over {len(self.parameters)} parameters")

    def test_identity_acts_trivially(self):
        for p in self.parameters:
            level = make_level(self.ctx, make_odd_form_ideal(self.ctx.delta, self.ideal, p))
            assert conj_form_parameter(self.ctx.identity(), level).omega.elements == p.elements
            assert conj_level(self.ctx.identity(), level).ideal == self.ideal

    def test_big_quasimodule_agrees(self):
        level = make_level(self.ctx, make_odd_form_ideal(self.ctx.delta, self.ideal, self.parameters[-1]))
        for sigma in self.group[:10]:
            assert conj_by_vectors(sigma, level) == conj_form_parameter(sigma, level).omega.elements

        with pytest.raises(CapExceededError):
            conj_by_vectors(self.group[0], level, cap=2)

    def test_conjugated_subgroups(self):
        logger.start_test("Conjugated congruence and elementary subgroups")

        level = make_level(self.ctx, make_odd_form_ideal(self.ctx.delta, self.ideal, self.parameters[0]))
        for sigma in self.group[:4]:
            assert_checks_pass(check_conjugated_congruence(sigma, level, self.group), logger)
            assert_checks_pass(check_conjugated_congruence(sigma, level, samples=5, seed=1), logger)
            assert_checks_pass(check_conjugated_elementary(sigma, level, self.group[:30]), logger)

        logger.pass_test("sigma U(I, Omega) sigma^-1 = U(I, ^sigma Omega)")

    @pytest.mark.parametrize("p, order", [(2, 24), (3, 72)])
    def test_conjugated_congruence_on_whole_group(self, p, order):
        logger.start_test(f"sigma U(I, Omega) sigma^-1 = U(I, ^sigma Omega) for every sigma and level over F{p}")

        ctx = _rank_one_context(p)
        group = enumerate_unitary_group(ctx)
        assert len(group) == order

        pairs = 0
        for ideal in enumerate_ideals(ctx.ring, ctx.quad.bar, "two"):
            for omega in enumerate_relative_form_parameters(ctx.delta, ideal):
                level = make_level(ctx, make_odd_form_ideal(ctx.delta, ideal, omega))
                for sigma in group:
                    checks = check_conjugated_congruence(sigma, level, group)
                    assert_checks_pass(checks, logger)
                    assert all(c.exhaustive for c in checks)
                    pairs += 1

        # {0} and F_p each carry at least one relative parameter
        assert pairs >= 2 * order

        logger.pass_test(f"{pairs} (sigma, level) pairs over a group of order {order}")


class TestActionSuite:
    """The action suite of VerificationService"""

    def setup_method(self):
        self.settings = Settings(samples=200, seed=3)

    def test_enumerated_group_uses_every_conjugator(self):
        logger.start_test("Every group element conjugates every level at n = 1")

        workload = VerificationService.prepare(build_instance(F2_RANK_ONE), self.settings)
        conjugators, complete = workload.conjugators()
        assert workload.exhaustive and complete
        assert len(conjugators) == len(workload.group) == 24

        by_name = checks_by_name(VerificationService.action(workload))
        exact = by_name["conjugated-congruence-exact"]
        assert exact.passed and exact.exhaustive
        assert exact.details["conjugators"] == 24
        assert exact.details["levels"] == len(workload.levels)
        assert exact.details["group_order"] == 24
        assert not by_name["conjugated-CU"].exhaustive

        logger.pass_test(f"{exact.cases} exact cases over {len(workload.levels)} levels")

    def test_sampled_conjugators_are_not_exhaustive(self):
        workload = VerificationService.prepare(build_instance("f2"), self.settings)
        conjugators, complete = workload.conjugators()
        assert not workload.exhaustive
        assert not complete
        assert 0 < len(conjugators) <= 6


class TestOrbits:
    """Orbit partitions of the relative parameters for I = {0} over M2(F2)"""

    def setup_method(self):
        self.ctx = m2f2_context(3)
        self.ring = self.ctx.ring
        self.zero = frozenset({self.ring.zero})

    def test_lattice(self):
        lattice = rofp_lattice(self.ctx, self.zero)
        assert len(lattice.parameters) == 5
        assert lattice.bottom == 0 and lattice.top == 4
        top = frozenset(HPoint(x, self.ring.zero) for x in right_ideal(self.ring, "J5"))
        assert lattice.index_of(top) == 4
        with pytest.raises(KeyError):
            lattice.index_of(frozenset())

    def test_elementary_orbits_fix_extremes(self):
        logger.start_test("Elementary generators fix Omega_min and Omega_max")

        partition = orbits(self.ctx, self.zero)
        assert partition.label == "reachable-closure"
        assert partition.notes["extremes_fixed"]
        assert partition.block_of(0) == [0]
        assert partition.block_of(4) == [4]
        assert sum(partition.block_sizes) == 5
        assert partition.certificate.passed

        logger.pass_test(f"Blocks of sizes {partition.block_sizes}")

    def test_swap_joins_the_lines(self):
        logger.start_test("The block swap permutes the three lines")

        swap = block_diagonal(self.ctx, self.ring.parse_element([[0, 1], [1, 0]]))
        shear = block_diagonal(self.ctx, self.ring.parse_element([[1, 0], [1, 1]]))
        partition = orbits(self.ctx, self.zero, witnesses=[swap, shear], include_elementary=False, full_group=True)
        assert sorted(partition.block_sizes) == [1, 1, 3]
        assert partition.label == "orbit"
        assert partition.certificate.passed
        assert len(partition.to_dict()["witnesses"]) == 6

        logger.pass_test("Blocks of sizes 1, 3, 1")

    def test_swap_leaves_tilde(self):
        swap = block_diagonal(self.ctx, self.ring.parse_element([[0, 1], [1, 0]]))
        omega = [(x, self.ring.zero) for x in right_ideal(self.ring, "J2")]
        level = make_level(self.ctx, make_odd_form_ideal(self.ctx.delta, self.zero, omega))
        assert not in_tilde(swap, level).ok


class TestScenario:
    """The whole M2(F2) scenario"""

    def test_scenario_reproduces(self):
        logger.start_test("M2(F2) scenario at n = 3")

        result = run_m2f2_scenario(3)
        assert result.failed == []
        assert {"lattice", "orbits", "level"} <= set(result.data)

        logger.pass_test(f"{len(result.checks)} expectations hold")

    def test_scenario_needs_rank_three(self):
        with pytest.raises(BadIndicesError):
            run_m2f2_scenario(2)


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Conjugation Action Tests")

    results = create_test_results(logger)

    action = TestConjugationAction()
    action.setup_method()
    results.run_test("action_laws", action.test_action_laws)
    results.run_test("conjugated_subgroups", action.test_conjugated_subgroups)
    results.run_test("conjugated_congruence_over_f2", action.test_conjugated_congruence_on_whole_group, 2, 24)
    results.run_test("conjugated_congruence_over_f3", action.test_conjugated_congruence_on_whole_group, 3, 72)

    suite = TestActionSuite()
    suite.setup_method()
    results.run_test("enumerated_group_uses_every_conjugator", suite.test_enumerated_group_uses_every_conjugator)

    orbit_tests = TestOrbits()
    orbit_tests.setup_method()
    results.run_test("elementary_orbits_fix_extremes", orbit_tests.test_elementary_orbits_fix_extremes)
    results.run_test("swap_joins_the_lines", orbit_tests.test_swap_joins_the_lines)

    scenario = TestScenario()
    results.run_test("scenario_reproduces", scenario.test_scenario_reproduces)

    sys.exit(0 if results.summary() else 1)
