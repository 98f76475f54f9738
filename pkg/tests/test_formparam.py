import pytest
import sys

from hypothesis import given, settings, strategies as st

# Import standardized test utilities
from tests.test_utils import get_test_logger, create_test_results, assert_checks_pass, checks_by_name

# Initialize standardized test logger
logger = get_test_logger(__name__)

from rings import build_ring, integers_mod, prime_field, matrix_ring, standard_involution, make_odd_quadruple
from formparam import (
    HPoint,
    heisenberg,
    close_subquasimodule,
    trace,
    ideal_generated,
    enumerate_ideals,
    is_left_unimodular,
    delta_min,
    delta_max,
    make_form_parameter,
    enumerate_form_parameters,
    omega_min,
    omega_max,
    make_odd_form_ideal,
    enumerate_relative_form_parameters,
    full_level,
    trivial_level,
    derived_sets,
    inverse_parameter,
    defined_ideal,
    defined_ideal_from_points,
    verify_quasimodule_identities,
)
from formparam.parameters import ideal_tilde
from utils.errors import CertificationFailedError, EnumerationOverflowError, PointNotInParameterError


def _quad(spec, involution, lam, mu):
    ring = build_ring(spec)
    bar = standard_involution(ring, involution)
    return make_odd_quadruple(ring, bar, ring.parse_element(lam), ring.parse_element(mu))


F2 = _quad(prime_field(2), "identity", "one", "zero")
Z4 = _quad(integers_mod(4), "identity", "one", 2)
M2F2 = _quad(matrix_ring(2, prime_field(2)), "transpose", "one", "zero")


class TestHeisenbergGroup:
    """The twisted group law on R x R"""

    def setup_method(self):
        self.ops = heisenberg(Z4)

    def test_twisted_sum(self):
        logger.start_test("Sum and negation with mu = 2 over Z/4")

        # (1, 0) + (1, 0) = (2, 0 - 1 * 2 * 1)
        assert self.ops.plus(HPoint(1, 0), HPoint(1, 0)) == HPoint(2, 2)
        assert self.ops.neg(HPoint(1, 1)) == HPoint(3, 1)
        assert self.ops.plus(HPoint(1, 1), HPoint(3, 1)) == self.ops.zero

        logger.pass_test("The mu-twist shows up in the second coordinate")

    def test_scale_and_trace(self):
        assert self.ops.scale(HPoint(1, 3), 2) == HPoint(2, 0)
        assert self.ops.scale(HPoint(3, 3), 0) == self.ops.zero
        assert trace(Z4, HPoint(1, 1)) == 0
        assert trace(Z4, HPoint(1, 0)) == 2

    @settings(deadline=None, max_examples=100)
    @given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 3), st.integers(0, 3)))
    def test_trace_is_additive(self, a, b):
        a, b = HPoint(*a), HPoint(*b)
        assert self.ops.trace(self.ops.plus(a, b)) == Z4.ring.a(self.ops.trace(a), self.ops.trace(b))

    def test_identities_hold(self):
        logger.start_test("Quasimodule identities on small quadruples")

        for quad in (F2, Z4):
            checks = verify_quasimodule_identities(quad, make_form_parameter(quad, "max"))
            assert_checks_pass(checks, logger)
            assert all(c.exhaustive for c in checks)

            inverse = checks_by_name(checks)["inverse-parameter"]
            assert inverse.cases == 2 and inverse.failures == 0

        logger.pass_test("Every identity holds exhaustively over F2 and Z/4")

    def test_identities_sampled_over_matrix_ring(self):
        checks = verify_quasimodule_identities(M2F2, samples=300, seed=5)
        assert_checks_pass(checks, logger)

        by_name = checks_by_name(checks)
        assert not by_name["heisenberg-associative"].exhaustive
        assert "inverse-parameter" not in by_name


class TestRingIdeals:
    """Ideals of the base ring"""

    def test_generated_ideals(self):
        ring = Z4.ring
        assert ideal_generated(ring, [2]) == frozenset({0, 2})
        assert ideal_generated(ring, []) == frozenset({0})
        assert ideal_generated(ring, [3]) == frozenset(ring.elements)

    def test_enumerated_ideals(self):
        logger.start_test("Involution-invariant two-sided ideals")

        assert enumerate_ideals(Z4.ring, Z4.bar) == [frozenset({0}), frozenset({0, 2}), frozenset(range(4))]
        # M2(F2) is simple
        assert len(enumerate_ideals(M2F2.ring, M2F2.bar)) == 2

        logger.pass_test("Z/4 has three ideals, M2(F2) two")

    def test_ideal_cap(self):
        with pytest.raises(EnumerationOverflowError):
            enumerate_ideals(Z4.ring, cap=1)

    def test_left_unimodular(self):
        assert not is_left_unimodular(Z4.ring, [2, 0])
        assert is_left_unimodular(Z4.ring, [2, 1])


class TestFormParameters:
    """Delta_min, Delta_max and everything between"""

    def test_bounds_over_f2(self):
        logger.start_test("Bounds over (F2, id, 1, 0)")

        assert delta_min(F2) == frozenset({HPoint(0, 0)})
        assert len(delta_max(F2)) == 4

        logger.pass_test("Delta_min is trivial and every point has trace zero")

    def test_bounds_over_z4(self):
        d_max = delta_max(Z4)
        assert len(d_max) == 8
        assert HPoint(1, 1) in d_max and HPoint(2, 2) in d_max
        assert HPoint(1, 0) not in d_max
        assert delta_min(Z4) <= d_max

    def test_bounds_over_matrix_ring(self):
        logger.start_test("Bounds over (M2(F2), transpose, e, 0)")

        # Delta_min: (0, x + x^t); Delta_max: second coordinate symmetric
        assert len(delta_min(M2F2)) == 2
        assert len(delta_max(M2F2)) == 16 * 8

        logger.pass_test("|Delta_min| = 2 and |Delta_max| = 128")

    def test_enumeration_over_f2(self):
        logger.start_test("Every form parameter of (F2, id, 1, 0)")

        found = enumerate_form_parameters(F2)
        # Abelian group law; the five subgroups of F2 x F2
        assert len(found) == 5
        assert found[0].elements == delta_min(F2)
        assert found[-1].elements == delta_max(F2)
        assert [len(p) for p in found] == sorted(len(p) for p in found)

        logger.pass_test("Five parameters, ordered from Delta_min to Delta_max")

    def test_enumeration_contains_bounds(self):
        found = {p.elements for p in enumerate_form_parameters(Z4)}
        assert delta_min(Z4) in found
        assert delta_max(Z4) in found

    def test_closure(self):
        ops = heisenberg(F2)
        assert close_subquasimodule(ops, [HPoint(1, 1)]).elements == frozenset({HPoint(0, 0), HPoint(1, 1)})
        assert close_subquasimodule(ops, []).elements == frozenset({ops.zero})
        assert len(close_subquasimodule(ops, [HPoint(1, 0), HPoint(0, 1)])) == 4

    def test_enumeration_cap(self):
        with pytest.raises(EnumerationOverflowError):
            enumerate_form_parameters(F2, cap=2)

    def test_certification(self):
        logger.start_test("Explicit point sets are certified")

        diagonal = make_form_parameter(F2, [(0, 0), (1, 1)])
        assert len(diagonal) == 2
        assert diagonal == make_form_parameter(F2, [HPoint(1, 1), HPoint(0, 0)])

        with pytest.raises(CertificationFailedError):
            make_form_parameter(F2, [(1, 1)])
        with pytest.raises(CertificationFailedError) as e:
            make_form_parameter(Z4, [(0, 0), (1, 0), (2, 2), (3, 2)])
        assert "outside-delta-max" in e.value.details["violations"]

        logger.pass_test("Non-subgroups and points outside Delta_max are refused")

    def test_inverse_parameter(self):
        delta = make_form_parameter(Z4, "max")
        inverse = inverse_parameter(delta)
        # The identity involution leaves points unchanged
        assert inverse.elements == delta.elements


class TestOddFormIdeals:
    """Levels (I, Omega) relative to Delta"""

    def setup_method(self):
        self.delta = make_form_parameter(M2F2, "max")
        self.zero = frozenset({M2F2.ring.zero})

    def test_relative_bounds(self):
        logger.start_test("Omega bounds for I = {0} over M2(F2)")

        # mu = 0 makes I~ all of R
        assert ideal_tilde(self.delta, self.zero) == frozenset(M2F2.ring.elements)
        assert len(omega_min(self.delta, self.zero)) == 1
        assert len(omega_max(self.delta, self.zero)) == 16

        logger.pass_test("Omega_min is trivial and Omega_max is R x {0}")

    def test_relative_parameters_over_matrix_ring(self):
        logger.start_test("Relative form parameters for I = {0} over M2(F2)")

        found = enumerate_relative_form_parameters(self.delta, self.zero)
        # Right ideals of M2(F2): zero, three lines and R
        assert len(found) == 5
        assert [len(c) for c in found] == [1, 4, 4, 4, 16]

        logger.pass_test("Five relative parameters")

    def test_full_and_trivial_levels(self):
        full = full_level(self.delta)
        trivial = trivial_level(self.delta)
        assert full.ideal == frozenset(M2F2.ring.elements)
        assert full.omega.elements == self.delta.elements
        assert trivial.ideal == self.zero
        assert make_odd_form_ideal(self.delta, trivial.ideal, trivial.omega) == trivial

    def test_level_certification(self):
        with pytest.raises(CertificationFailedError):
            make_odd_form_ideal(self.delta, self.zero, [(0, 0), (0, M2F2.ring.one)])

    def test_derived_sets(self):
        logger.start_test("Derived sets of the trivial level")

        sets = derived_sets(trivial_level(self.delta))
        assert sets.j_delta == frozenset(M2F2.ring.elements)
        assert sets.i_zero == self.zero
        assert len(sets.lambda_delta) == 8
        assert sets.gamma_omega == self.zero
        assert set(sets.to_dict()) == {"j_delta", "i_tilde", "i_zero", "i_tilde_zero", "j_omega", "lambda_delta", "gamma_omega"}

        logger.pass_test("J(Delta) = R, I0 = 0 and Lambda(Delta) is the symmetric matrices")


class TestDefinedIdeals:
    """Odd form ideals defined by generators and by points"""

    def setup_method(self):
        self.delta = make_form_parameter(F2, "max")

    def test_defined_by_generators(self):
        level = defined_ideal(self.delta, [F2.ring.one])
        assert level.ideal == frozenset(F2.ring.elements)
        assert level.omega.elements == self.delta.elements

        nothing = defined_ideal(self.delta, [])
        assert nothing.ideal == frozenset({0})

    def test_defined_by_points(self):
        logger.start_test("Odd form ideal defined by a point of Delta")

        defined = defined_ideal_from_points(self.delta, [(0, 1)])
        assert defined.level.ideal == frozenset({0, 1})
        assert defined.level.omega.elements == self.delta.elements

        logger.pass_test("(0, 1) defines (R, Delta)")

    def test_point_outside_delta(self):
        delta = make_form_parameter(F2, "min")
        with pytest.raises(PointNotInParameterError) as e:
            defined_ideal_from_points(delta, [(1, 0)])
        assert e.value.details["points"] == [[1, 0]]


if __name__ == "__main__":
    """Direct execution for non-pytest testing"""
    logger.section("Form Parameter Tests")

    results = create_test_results(logger)

    group = TestHeisenbergGroup()
    group.setup_method()
    results.run_test("twisted_sum", group.test_twisted_sum)
    results.run_test("identities_hold", group.test_identities_hold)

    parameters = TestFormParameters()
    results.run_test("bounds_over_matrix_ring", parameters.test_bounds_over_matrix_ring)
    results.run_test("enumeration_over_f2", parameters.test_enumeration_over_f2)
    results.run_test("certification", parameters.test_certification)

    levels = TestOddFormIdeals()
    levels.setup_method()
    results.run_test("relative_parameters_over_matrix_ring", levels.test_relative_parameters_over_matrix_ring)
    results.run_test("derived_sets", levels.test_derived_sets)

    sys.exit(0 if results.summary() else 1)
