import json
import math
from fractions import Fraction

from django.conf import settings as django_settings
from django.test import SimpleTestCase

from infinitesimal.exceptions import UnlimitedError
from infinitesimal.series import lc_epsilon, monad_point, standard_part
from infinitesimal.tests.strategies import seeded
from lineelement.constants import PhysicalConstants
from lineelement.elements import (
    Chart,
    ElementValues,
    Regime,
    b_coefficient,
    block_determinant,
    coefficient_constraint_check,
    eddington_finkelstein_element,
    element_from_dict,
    element_to_dict,
    evaluate_element,
    infinitesimal_product_check,
    lambda_of_R,
    regime_classify,
    schwarzschild_element,
    standardize_element,
    transform_u_substitution,
)
from lineelement.exceptions import (
    CoordinateSingularityError,
    InvalidConstantsError,
    InvalidRadiusError,
    RegimeMismatchError,
)
from lineelement.expressions import EPS as EPS_SYMBOL
from lineelement.expressions import LAMBDA, C, H, expressions_identical, parse_expression
from lineelement.tests.sampling import sample_points
from transition.functions import TransitionSpec

EPS = lc_epsilon(1)
UNIT = PhysicalConstants()


def transformed(consts=UNIT, spec=None):
    return transform_u_substitution(schwarzschild_element(consts), spec or TransitionSpec.ideal(), consts)


class ConstantsTests(SimpleTestCase):

    def test_geometric_defaults(self):
        self.assertEqual(UNIT.as_bindings(), {'G': 1, 'M': 1, 'c': 1})
        self.assertEqual(UNIT.schwarzschild_radius, 2)

    def test_non_positive_or_non_finite_rejected(self):
        for kwargs in ({'M': 0}, {'G': -1}, {'c': float('nan')}):
            with self.subTest(kwargs=kwargs), self.assertRaises(InvalidConstantsError):
                PhysicalConstants(**kwargs)

    def test_si_radius_of_one_solar_mass(self):
        sun = PhysicalConstants.si(1.989e30)
        self.assertEqual(sun.units, 'si')
        self.assertAlmostEqual(sun.schwarzschild_radius, 2954.0, delta=1.0)


class LambdaTests(SimpleTestCase):

    def test_lambda_values(self):
        self.assertEqual(lambda_of_R(UNIT, 4), Fraction(1, 2))
        self.assertEqual(lambda_of_R(UNIT, 2), 0)
        self.assertEqual(lambda_of_R(UNIT, 1), -1)

    def test_non_positive_radius_rejected(self):
        for R in (0, -1, Fraction(-1, 2)):
            with self.subTest(R=R), self.assertRaises(InvalidRadiusError):
                lambda_of_R(UNIT, R)

    def test_regimes(self):
        self.assertIs(regime_classify(UNIT, 1), Regime.INTERIOR)
        self.assertIs(regime_classify(UNIT, 2), Regime.HORIZON)
        self.assertIs(regime_classify(UNIT, 4), Regime.EXTERIOR)
        heavy = PhysicalConstants(M=3)
        self.assertIs(regime_classify(heavy, 6), Regime.HORIZON)


class SchwarzschildElementTests(SimpleTestCase):

    def test_coefficients_outside_the_horizon(self):
        values = evaluate_element(schwarzschild_element(UNIT), 4, math.pi / 2)
        self.assertEqual(values.tt, Fraction(1, 2))
        self.assertEqual(values.tr, 0)
        self.assertEqual(values.rr, -2)
        self.assertEqual(values.thth, -16)
        self.assertEqual(values.phph, -16.0)

    def test_horizon_is_a_coordinate_singularity(self):
        with self.assertRaises(CoordinateSingularityError):
            evaluate_element(schwarzschild_element(UNIT), 2, Fraction(1))

    def test_speed_of_light_scales_time_coefficient(self):
        consts = PhysicalConstants(c=3, M=Fraction(9, 2))
        values = evaluate_element(schwarzschild_element(consts), Fraction(1, 2), Fraction(1))
        self.assertEqual(values.lam, -1)
        self.assertEqual(values.tt, -9)


class SubstitutionTests(SimpleTestCase):

    def test_angular_sector_is_carried_over(self):
        start = schwarzschild_element(UNIT)
        elem = transformed()
        self.assertIs(elem.thth, start.thth)
        self.assertIs(elem.phph, start.phph)
        self.assertIs(elem.chart, Chart.U)

    def test_only_diagonal_t_chart_elements_are_transformed(self):
        with self.assertRaises(ValueError):
            transform_u_substitution(eddington_finkelstein_element(UNIT), TransitionSpec.ideal())

    def test_b_term_vanishes_on_the_interior(self):
        spec = TransitionSpec.ideal()
        for lam in (Fraction(-1), Fraction(-3, 7), 0):
            with self.subTest(lam=lam):
                self.assertEqual(b_coefficient(spec, lam, UNIT), 0)
        self.assertEqual(b_coefficient(spec, Fraction(-2), PhysicalConstants(c=2)), 0)

    def test_b_term_vanishes_on_sampled_interior_points(self):
        rng = seeded(django_settings.HF_SEED)
        spec = TransitionSpec.ideal()
        lambdas = []
        for k in range(100):
            r = -Fraction(rng.randint(1, 500), 100)
            if k % 3 == 0:
                lambdas.append(r)
            elif k % 3 == 1:
                lambdas.append(monad_point(r, {Fraction(rng.randint(1, 6), 2): rng.randint(-9, 9) or 1}))
            else:
                lambdas.append(monad_point(0, {Fraction(rng.randint(1, 6), 2): -rng.randint(1, 9)}))
        for lam in lambdas:
            with self.subTest(lam=lam):
                self.assertEqual(b_coefficient(spec, lam, UNIT), 0)

    def test_b_term_expression(self):
        elem = transformed(PhysicalConstants(c=3))
        shifted = LAMBDA - EPS_SYMBOL
        self.assertTrue(expressions_identical(elem.rr, shifted * H(LAMBDA) ** 2 - 1 / shifted))
        self.assertTrue(expressions_identical(elem.tr, -2 * elem.tt * elem.f_M))

    def test_b_term_is_not_identically_zero(self):
        self.assertNotEqual(b_coefficient(TransitionSpec.ideal(), Fraction(1, 2), UNIT), 0)

    def test_cross_term_standardizes_to_minus_two_c(self):
        for c in (1, 2, Fraction(1, 3)):
            consts = PhysicalConstants(c=c)
            values = evaluate_element(transformed(consts), consts.schwarzschild_radius / 2, Fraction(1))
            with self.subTest(c=c):
                self.assertEqual(standard_part(values.tr), -2 * consts.c)

    def test_real_parameter_mode(self):
        a = Fraction(1, 1000)
        elem = transformed(spec=TransitionSpec(a))
        inside = evaluate_element(elem, 1, Fraction(1))
        self.assertEqual(inside.tt, -1 - a)
        self.assertEqual(inside.tr, -2)
        self.assertEqual(inside.rr, 0)
        outside = evaluate_element(elem, 100, Fraction(1))
        self.assertEqual(outside.tr, 0)
        self.assertEqual(outside.rr, -1 / (Fraction(49, 50) - a))


class StandardizationTests(SimpleTestCase):

    def test_interior_becomes_eddington_finkelstein(self):
        rng = seeded(django_settings.HF_SEED)
        elem = transformed()
        reference = eddington_finkelstein_element(UNIT)
        for R, theta in sample_points(rng, UNIT, 50, Regime.INTERIOR):
            standardized = standardize_element(evaluate_element(elem, R, theta), Regime.INTERIOR)
            expected = evaluate_element(reference, R, theta)
            with self.subTest(R=R, theta=theta):
                self.assertEqual(standardized.coefficients, {
                    'tt': expected.tt, 'tr': expected.tr, 'rr': expected.rr,
                    'thth': expected.thth, 'phph': expected.phph,
                })
                self.assertFalse(standardized.f_M_unlimited)

    def test_exterior_reduces_to_schwarzschild(self):
        rng = seeded(django_settings.HF_SEED + 1)
        elem = transformed()
        reference = schwarzschild_element(UNIT)
        for R, theta in sample_points(rng, UNIT, 50, Regime.EXTERIOR):
            standardized = standardize_element(evaluate_element(elem, R, theta), Regime.EXTERIOR)
            expected = evaluate_element(reference, R, theta)
            with self.subTest(R=R, theta=theta):
                self.assertEqual(standardized.tt, expected.tt)
                self.assertEqual(standardized.tr, 0)
                self.assertEqual(standardized.rr, expected.rr)
                self.assertEqual(standardized.st_f_M, 0)

    def test_horizon_records_unlimited_transformation_function(self):
        standardized = standardize_element(evaluate_element(transformed(), 2, Fraction(1)), Regime.HORIZON)
        self.assertEqual((standardized.tt, standardized.tr, standardized.rr), (0, -2, 0))
        self.assertTrue(standardized.f_M_unlimited)
        self.assertIsNone(standardized.st_f_M)
        self.assertEqual(standardized.st_f_M_dR, 0)

    def test_regime_mismatch(self):
        values = evaluate_element(transformed(), 1, Fraction(1))
        with self.assertRaises(RegimeMismatchError):
            standardize_element(values, Regime.EXTERIOR)

    def test_unlimited_coefficient_has_no_standard_part(self):
        values = ElementValues(Chart.U, Fraction(-1), lc_epsilon(-1), -2, 0, -1, -1)
        with self.assertRaises(UnlimitedError):
            standardize_element(values, Regime.INTERIOR)

    def test_block_determinant_is_minus_c_squared(self):
        for c in (1, 3):
            consts = PhysicalConstants(c=c)
            values = evaluate_element(eddington_finkelstein_element(consts), 4, Fraction(1))
            with self.subTest(c=c):
                self.assertEqual(block_determinant(values), -c ** 2)


class InfinitesimalProductTests(SimpleTestCase):

    def test_products_over_every_branch(self):
        lambdas = [Fraction(-2), Fraction(-1), Fraction(0), EPS, 3 * EPS, Fraction(1), Fraction(5)]
        report = infinitesimal_product_check(TransitionSpec.ideal(), lambdas)
        self.assertTrue(report.passed)
        self.assertEqual(report.bound, 2)
        self.assertEqual(report.worst_exponent, 2)
        by_lambda = {str(row.lam): row for row in report.rows}
        self.assertEqual(by_lambda[str(EPS)].f_M, Fraction(-3, 4) * lc_epsilon(-1))
        self.assertEqual(by_lambda['-2'].leading_exponent, 3)
        self.assertIsNone(by_lambda['5'].leading_exponent)

    def test_needs_the_ideal_model(self):
        with self.assertRaises(ValueError):
            infinitesimal_product_check(TransitionSpec(1), [Fraction(-1)])

    def test_every_time_radius_coefficient_times_dR(self):
        rows = coefficient_constraint_check(TransitionSpec.ideal(), [Fraction(-1), Fraction(0), Fraction(1, 2)])
        self.assertEqual(len(rows), 9)
        self.assertTrue(all(row.infinitesimal for row in rows))

    def test_shifted_pole_is_reported_singular(self):
        rows = coefficient_constraint_check(TransitionSpec.ideal(), [EPS])
        singular = [row.name for row in rows if row.singular]
        self.assertEqual(singular, ['rr'])


class SerializationTests(SimpleTestCase):

    def test_round_trip_through_json(self):
        elements = [
            schwarzschild_element(UNIT),
            eddington_finkelstein_element(PhysicalConstants(c=2)),
            transformed(),
            transformed(spec=TransitionSpec(0.001)),
            transformed(PhysicalConstants.si(1.989e30), TransitionSpec(1e-6)),
        ]
        for elem in elements:
            payload = json.loads(json.dumps(element_to_dict(elem)))
            with self.subTest(chart=elem.chart, transition=elem.transition):
                self.assertEqual(element_from_dict(payload), elem)

    def test_payload_layout(self):
        payload = element_to_dict(transformed())
        self.assertEqual(payload['chart'], 'U')
        self.assertEqual(parse_expression(payload['coefficients']['tt']), (LAMBDA - EPS_SYMBOL) * C ** 2)
        self.assertEqual(payload['transition'], {'ideal': True, 'a': '1*e^(1)', 'window': '4', 'max_terms': 32})
        self.assertEqual(payload['constants'], {'G': '1', 'M': '1', 'c': '1', 'units': 'geometric'})
