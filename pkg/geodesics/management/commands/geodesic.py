from geodesics.exceptions import CoordinatePoleError, InvalidRayError
from geodesics.forms import GeodesicForm
from geodesics.integrator import integrate_radial_null
from geodesics.rays import IntegratorConfig, closed_form_time
from reports.base import Outcome, ReportCommand
from reports.writers import write_json, write_table

ORACLE_TOLERANCE = 1e-6
HORIZON_BAND = 1e-3


class Command(ReportCommand):
    help = 'Integrate a radial null ray in the t-chart or U-chart and report blow-up or horizon crossing'
    form_class = GeodesicForm
    usage_errors = (InvalidRayError, CoordinatePoleError, ValueError)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--chart', choices=['t', 'u'], default='u', help='t-chart or U-chart')
        parser.add_argument('--dir', dest='direction', choices=['in', 'out'], default='in',
                            help='ingoing or outgoing ray')
        parser.add_argument('--from', dest='start', type=float, required=True, help='start radius')
        parser.add_argument('--to', dest='stop', type=float, help='stop radius')
        parser.add_argument('--t0', dest='T0', type=float, default=0.0, help='time coordinate at the start')
        parser.add_argument('--rtol', type=float, default=IntegratorConfig.rel_tol)
        parser.add_argument('--min-step', dest='min_step', type=float, default=IntegratorConfig.min_step)
        parser.add_argument('--initial-step', dest='initial_step', type=float,
                            default=IntegratorConfig.initial_step)

    def command_data(self, options):
        keys = ('chart', 'direction', 'start', 'stop', 'T0', 'rtol', 'min_step', 'initial_step')
        return {key: options[key] for key in keys if options[key] is not None}

    def run(self, run_config, cleaned_data):
        ray, cfg = cleaned_data['ray'], cleaned_data['integrator']
        consts = run_config.constants
        trajectory = integrate_radial_null(ray, cfg, consts, cleaned_data['stop'])
        deviation, checked = self.oracle_deviation(trajectory, consts)
        passed = deviation <= ORACLE_TOLERANCE

        chart, direction = ray.chart.value, ray.direction.value
        rows = [(point.R, point.T, chart, direction, point.local_error) for point in trajectory.points]
        parameters = run_config.as_parameters()
        parameters.update({
            'chart': chart, 'direction': direction, 'start': ray.R, 'stop': trajectory.stop, 'T0': ray.T,
            'rtol': cfg.rel_tol, 'min_step': cfg.min_step, 'initial_step': cfg.initial_step,
        })
        report = {
            'command': 'geodesic',
            'parameters': parameters,
            'passed': passed,
            'verdict': trajectory.verdict,
            'crossed_horizon': trajectory.crossed_horizon,
            'end': {'R': trajectory.end.R, 'T': trajectory.end.T},
            'points': len(trajectory.points),
            'rejected_steps': trajectory.rejected_steps,
            'error_estimate': trajectory.error_estimate,
            'oracle': {'max_relative_deviation': deviation, 'points_checked': checked, 'passed': passed},
        }
        out = run_config.output_dir
        files = [
            write_table(out / 'geodesic_trajectory', ['R', 'T', 'chart', 'direction', 'local_error_estimate'],
                        rows, run_config.output_format),
            write_json(out / 'geodesic_report.json', report),
        ]
        crossing = 'crossed the horizon' if trajectory.crossed_horizon else 'did not cross the horizon'
        summary = (f"{chart}-chart {direction}going ray from R={ray.R}: {trajectory.verdict.value}, {crossing}, "
                   f"end R={trajectory.end.R!r} T={trajectory.end.T!r}")
        return Outcome(passed=passed, summary=summary, files=files, report=report)

    def oracle_deviation(self, trajectory, consts):
        """Largest relative deviation from the closed-form T(R), away from the horizon."""
        radius = float(consts.schwarzschild_radius)
        start = trajectory.start
        worst, checked = 0.0, 0
        for point in trajectory.points:
            if abs(point.R - radius) < HORIZON_BAND * radius:
                continue
            try:
                oracle = closed_form_time(start.chart, start.direction, consts, point.R, start.R, start.T)
            except CoordinatePoleError:
                continue
            worst = max(worst, abs(point.T - oracle) / max(1.0, abs(oracle)))
            checked += 1
        return worst, checked
