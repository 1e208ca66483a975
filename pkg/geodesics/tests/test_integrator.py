import math

from django.test import SimpleTestCase

from geodesics.exceptions import CoordinatePoleError, InvalidRayError
from geodesics.integrator import Verdict, integrate_radial_null, rkf45_step
from geodesics.rays import Direction, IntegratorConfig, RayState, closed_form_time
from lineelement.constants import PhysicalConstants
from lineelement.elements import Chart

UNIT = PhysicalConstants()


def ray(R, chart, direction, T=0.0):
    return RayState(float(R), T, chart, direction)


class StepTests(SimpleTestCase):

    def test_quartic_is_integrated_exactly(self):
        T_next, error = rkf45_step(lambda r, t: 4 * r ** 3, 1.0, 1.0, 0.5)
        self.assertAlmostEqual(T_next, 1.5 ** 4, places=13)
        self.assertLess(error, 1e-12)

    def test_error_estimate_sees_higher_order_terms(self):
        _, error = rkf45_step(lambda r, t: math.exp(r), 0.0, 1.0, 1.0)
        self.assertGreater(error, 0)


class HorizonCrossingTests(SimpleTestCase):

    def test_ingoing_u_ray_crosses_the_horizon(self):
        trajectory = integrate_radial_null(ray(4, Chart.U, Direction.INGOING, T=0.5), consts=UNIT)
        self.assertIs(trajectory.verdict, Verdict.COMPLETED)
        self.assertTrue(trajectory.crossed_horizon)
        self.assertEqual(trajectory.end.R, 1.0)
        for point in trajectory.points:
            self.assertAlmostEqual(point.T, 0.5, delta=1e-9)

    def test_ingoing_t_ray_blows_up_before_the_horizon(self):
        cfg = IntegratorConfig()
        trajectory = integrate_radial_null(ray(4, Chart.T, Direction.INGOING), cfg, UNIT)
        self.assertIs(trajectory.verdict, Verdict.BLOW_UP)
        self.assertFalse(trajectory.crossed_horizon)
        self.assertGreaterEqual(trajectory.end.R - 2.0, cfg.min_step)
        self.assertGreater(trajectory.end.T, 15.0)

    def test_t_ray_follows_the_logarithmic_antiderivative(self):
        trajectory = integrate_radial_null(ray(4, Chart.T, Direction.INGOING), consts=UNIT)
        checked = 0
        for point in trajectory.points:
            if point.R < 2.0 * (1 + 1e-3):
                continue
            oracle = closed_form_time(Chart.T, Direction.INGOING, UNIT, point.R, 4.0, 0.0)
            self.assertLessEqual(abs(point.T - oracle), 1e-6 * max(1.0, abs(oracle)))
            checked += 1
        self.assertGreater(checked, 10)

    def test_outgoing_u_ray_from_inside_blows_up(self):
        trajectory = integrate_radial_null(ray(1, Chart.U, Direction.OUTGOING), consts=UNIT)
        self.assertIs(trajectory.verdict, Verdict.BLOW_UP)
        self.assertLess(trajectory.end.R, 2.0)

    def test_outgoing_u_ray_outside_matches_closed_form(self):
        trajectory = integrate_radial_null(ray(3, Chart.U, Direction.OUTGOING), IntegratorConfig(r_ceiling=10.0), UNIT)
        self.assertIs(trajectory.verdict, Verdict.COMPLETED)
        oracle = closed_form_time(Chart.U, Direction.OUTGOING, UNIT, 10.0, 3.0, 0.0)
        self.assertAlmostEqual(trajectory.end.T, oracle, delta=1e-6)

    def test_other_masses_scale_the_horizon(self):
        consts = PhysicalConstants(M=3)
        trajectory = integrate_radial_null(ray(12, Chart.T, Direction.INGOING), consts=consts)
        self.assertIs(trajectory.verdict, Verdict.BLOW_UP)
        self.assertGreater(trajectory.end.R, 6.0)


class StepControlTests(SimpleTestCase):

    def test_halved_tolerance_stays_within_the_error_estimate(self):
        start = ray(3, Chart.U, Direction.OUTGOING)
        coarse = integrate_radial_null(start, IntegratorConfig(rel_tol=1e-8, r_ceiling=10.0), UNIT)
        fine = integrate_radial_null(start, IntegratorConfig(rel_tol=5e-9, r_ceiling=10.0), UNIT)
        self.assertLess(abs(fine.end.T - coarse.end.T), coarse.error_estimate)

    def test_zero_length_integration(self):
        trajectory = integrate_radial_null(ray(4, Chart.T, Direction.INGOING), consts=UNIT, stop=4.0)
        self.assertEqual(len(trajectory.points), 1)
        self.assertIs(trajectory.verdict, Verdict.COMPLETED)
        self.assertEqual(trajectory.error_estimate, 0.0)

    def test_coordinate_ceiling(self):
        cfg = IntegratorConfig(coordinate_ceiling=5.0)
        trajectory = integrate_radial_null(ray(4, Chart.T, Direction.INGOING), cfg, UNIT)
        self.assertIs(trajectory.verdict, Verdict.COORDINATE_CEILING)
        self.assertGreater(abs(trajectory.end.T), 5.0)

    def test_wrong_way_stop_radius(self):
        with self.assertRaises(InvalidRayError):
            integrate_radial_null(ray(4, Chart.U, Direction.INGOING), consts=UNIT, stop=6.0)

    def test_start_on_a_pole(self):
        with self.assertRaises(CoordinatePoleError):
            integrate_radial_null(ray(2, Chart.T, Direction.INGOING), consts=UNIT)
