import random
from fractions import Fraction

from infinitesimal.exceptions import UnlimitedError
from infinitesimal.series import standard_part
from reports.base import Outcome, ReportCommand
from reports.writers import write_json, write_table
from transition.checks import (
    finite_difference_check,
    junction_report,
    sample_table,
    standard_part_identity_check,
    sup_bound_check,
)
from transition.forms import TransitionForm
from transition.functions import TransitionSpec


def _standard_or_none(value):
    try:
        return standard_part(value)
    except UnlimitedError:
        return None


class Command(ReportCommand):
    help = 'Sample H_a and its derivative and check junctions, the 2/a bound and derivatives'
    form_class = TransitionForm

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--a', dest='a', help='transition parameter a > 0')
        parser.add_argument('--epsilon', action='store_true', help='use the ideal model a = e')
        parser.add_argument('--range', default='-5:5', help='sample range lo:hi')
        parser.add_argument('--samples', type=int, default=1000, help='number of samples')
        parser.add_argument('--check-bound', dest='check_bound', action='store_true',
                            help='scan for the maximum of |H_a| against 2/a')

    def command_data(self, options):
        return {
            'a': options['a'] or '',
            'epsilon': options['epsilon'],
            'range': options['range'],
            'samples': options['samples'],
            'check_bound': options['check_bound'],
        }

    def run(self, run_config, cleaned_data):
        lo, hi = cleaned_data['range']
        samples = cleaned_data['samples']
        parameters = run_config.as_parameters()
        parameters.update({'range': [lo, hi], 'samples': samples})

        if cleaned_data['epsilon']:
            spec = TransitionSpec.ideal(run_config.policy)
            rows = [(row.x, row.value, row.derivative, _standard_or_none(row.value))
                    for row in sample_table(spec, lo, hi, samples)]
            header = ['x', 'H', 'dH', 'st_H']
            report, passed = self.ideal_checks(run_config)
            parameters['a'] = 'e'
        else:
            spec = TransitionSpec(cleaned_data['a'])
            rows = [(row.x, row.value, row.derivative) for row in sample_table(spec, lo, hi, samples)]
            header = ['x', 'H', 'dH']
            report, passed = self.real_checks(spec, lo, hi, cleaned_data['check_bound'])
            parameters['a'] = spec.a

        out = run_config.output_dir
        files = [write_table(out / 'transition_samples', header, rows, run_config.output_format)]
        report = {'command': 'transition', 'parameters': parameters, 'passed': passed, **report}
        files.append(write_json(out / 'transition_report.json', report))
        verdict = 'all checks pass' if passed else 'checks failed'
        return Outcome(passed=passed, summary=f"transition a={parameters['a']}: {verdict}", files=files,
                       report=report)

    def real_checks(self, spec, lo, hi, check_bound):
        junctions = junction_report(spec)
        points = [lo + (hi - lo) * Fraction(k, 20) for k in range(21)] + [0, 2 * spec.a]
        differences = finite_difference_check(spec, points)
        report = {
            'junctions': {
                'passed': junctions.passed,
                'exact': junctions.exact,
                'limits': [
                    {'point': limit.point, 'quantity': limit.quantity, 'left': limit.left,
                     'right': limit.right, 'passed': limit.passed}
                    for limit in junctions.limits
                ],
            },
            'finite_differences': {
                'passed': all(row.passed for row in differences),
                'points': len(differences),
                'worst_error': max(row.error for row in differences),
            },
            'sup_bound': None,
        }
        passed = junctions.passed and report['finite_differences']['passed']
        if check_bound:
            bound = sup_bound_check(spec)
            report['sup_bound'] = {
                'passed': bound.passed,
                'maximum': bound.maximum,
                'bound': bound.bound,
                'extremum_x': bound.extremum_x,
                'extremum_value': bound.extremum_value,
                'extremum_exact': bound.extremum_exact,
                'samples': bound.samples,
            }
            passed = passed and bound.passed
        return report, passed

    def ideal_checks(self, run_config):
        rng = random.Random(run_config.seed)
        xs = [-Fraction(rng.randint(1, 1000), rng.randint(1, 100)) for _ in range(100)]
        xs += [Fraction(rng.randint(1, 1000), rng.randint(1, 100)) for _ in range(100)]
        xs.append(Fraction(0))
        rows = standard_part_identity_check(xs, run_config.policy)
        failures = [row.x for row in rows if not row.passed]
        report = {
            'standard_part_identity': {
                'passed': not failures,
                'points': len(rows),
                'failures': failures,
            },
        }
        return report, not failures
