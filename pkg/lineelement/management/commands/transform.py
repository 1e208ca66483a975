import logging
import math
from dataclasses import replace

from infinitesimal.exceptions import UnlimitedError
from infinitesimal.series import LCNumber, standard_part
from lineelement.elements import (
    COEFFICIENT_NAMES,
    Regime,
    block_determinant,
    coefficient_constraint_check,
    eddington_finkelstein_element,
    element_to_dict,
    evaluate_element,
    regime_of_lambda,
    schwarzschild_element,
    standardize_element,
    transform_u_substitution,
)
from lineelement.exceptions import CoordinateSingularityError
from lineelement.forms import TransformForm
from reports.base import Outcome, ReportCommand
from reports.writers import write_json, write_table
from transition.functions import TransitionSpec

logger = logging.getLogger(__name__)

FLOAT_TOLERANCE = 1e-9


def _is_zero(value, float_mode):
    if not float_mode:
        return value == 0
    terms = value.terms.values() if isinstance(value, LCNumber) else [value]
    return all(abs(c) <= FLOAT_TOLERANCE for c in terms)


def _close(left, right, float_mode):
    if not float_mode:
        return left == right
    return math.isclose(left, right, rel_tol=FLOAT_TOLERANCE, abs_tol=FLOAT_TOLERANCE)


def _without_float_noise(value):
    """Drops float terms within FLOAT_TOLERANCE of zero."""
    if not isinstance(value, LCNumber):
        return value
    kept = {q: c for q, c in value.terms.items() if not (isinstance(c, float) and abs(c) <= FLOAT_TOLERANCE)}
    return LCNumber(kept, value.policy)


def _standard_or_unlimited(value):
    if value is None:
        return None
    try:
        return standard_part(value)
    except UnlimitedError:
        return 'unlimited'


class Command(ReportCommand):
    help = 'Apply dU = dt + f_M dR to the Schwarzschild element and standardize at one point'
    form_class = TransformForm
    usage_errors = (ValueError, CoordinateSingularityError)

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--R', dest='R', help='radius of the evaluation point')
        parser.add_argument('--regime', help='interior, horizon or exterior instead of --R')
        parser.add_argument('--a', dest='a', help='real transition parameter (default: ideal a = e)')
        parser.add_argument('--theta', default=repr(math.pi / 2), help='polar angle')
        parser.add_argument('--dr-order', dest='dr_order', type=int, default=3,
                            help='exponent k of the infinitesimal step dR = e^k')

    def command_data(self, options):
        return {
            'R': options['R'] or '',
            'regime': options['regime'] or '',
            'a': options['a'] or '',
            'theta': options['theta'],
            'dr_order': options['dr_order'],
        }

    def run(self, run_config, cleaned_data):
        consts = run_config.constants
        float_mode = run_config.float_mode
        if cleaned_data['a'] is None:
            spec = TransitionSpec.ideal(run_config.policy)
        else:
            spec = TransitionSpec(cleaned_data['a'])
        R, theta, dr_order = cleaned_data['R'], cleaned_data['theta'], cleaned_data['dr_order']

        elem = transform_u_substitution(schwarzschild_element(consts), spec, consts)
        values = evaluate_element(elem, R, theta, cleaned_data['lam'])
        if float_mode:
            cleaned = {name: _without_float_noise(getattr(values, name)) for name in COEFFICIENT_NAMES}
            values = replace(values, **cleaned)
        regime = regime_of_lambda(values.lam)
        b_zero = _is_zero(values.rr, float_mode)
        try:
            standardized = standardize_element(values, regime, dr_order)
        except UnlimitedError as exc:
            logger.warning("no standard element at R=%s: %s", R, exc)
            standardized, failure = None, str(exc)
        else:
            failure = None

        if standardized is None:
            target_name, matches = None, False
        else:
            target_name, matches = self.compare_with_target(standardized, values.lam, spec, consts, R, theta,
                                                            float_mode)
        rows = coefficient_constraint_check(spec, [values.lam], dr_order, consts)
        constraint_passed = all(row.infinitesimal for row in rows)

        b_required = regime is not Regime.EXTERIOR
        passed = (standardized is not None and (b_zero or not b_required) and matches is not False
                  and constraint_passed)
        parameters = run_config.as_parameters()
        parameters.update({'R': R, 'theta': theta, 'a': 'e' if spec.is_ideal else spec.a, 'dr_order': dr_order})
        report = {
            'command': 'transform',
            'parameters': parameters,
            'passed': passed,
            'regime': regime.value,
            'lambda': values.lam,
            'raw': {name: getattr(values, name) for name in COEFFICIENT_NAMES},
            'standardized': self.standardized_coefficients(values, standardized),
            'standardization_error': failure,
            'f_M': {
                'raw': values.f_M,
                'standard_part': _standard_or_unlimited(values.f_M),
                'standard_part_times_dR': standardized.st_f_M_dR if standardized else None,
            },
            'b_term': {'value': values.rr, 'zero': b_zero, 'required_zero': b_required},
            'target': {'element': target_name, 'matches': matches},
            'block_determinant': {
                'raw': block_determinant(values),
                'standardized': block_determinant(standardized) if standardized else None,
            },
            'constraint': {
                'passed': constraint_passed,
                'rows': [
                    {'name': row.name, 'product': row.product, 'infinitesimal': row.infinitesimal,
                     'singular': row.singular}
                    for row in rows
                ],
            },
            'element': element_to_dict(elem),
        }

        out = run_config.output_dir
        table = [(name, getattr(values, name), report['standardized'][name]) for name in COEFFICIENT_NAMES]
        files = [
            write_table(out / 'transform_coefficients', ['coefficient', 'raw', 'standardized'], table,
                        run_config.output_format),
            write_json(out / 'transform_report.json', report),
        ]
        verdict = 'all checks pass' if passed else 'checks failed'
        return Outcome(passed=passed, summary=f"transform R={R} ({regime.value}): {verdict}", files=files,
                       report=report)

    def standardized_coefficients(self, values, standardized):
        if standardized is not None:
            return standardized.coefficients
        return {name: _standard_or_unlimited(getattr(values, name)) for name in COEFFICIENT_NAMES}

    def compare_with_target(self, standardized, lam, spec, consts, R, theta, float_mode):
        """Standardized coefficients against the standard element at the shifted lambda.

        The shift st(lambda - a) is lambda itself in the ideal model. Interior and
        horizon points target the Eddington-Finkelstein element, exterior points
        past the transition zone (lambda > 2a) the Schwarzschild element.
        """
        shifted = standard_part(lam - spec.a)
        if regime_of_lambda(lam) is Regime.EXTERIOR:
            if not lam > 2 * spec.a:
                return None, None
            target, name = schwarzschild_element(consts), 'schwarzschild'
        else:
            target, name = eddington_finkelstein_element(consts), 'eddington_finkelstein'
        try:
            expected = evaluate_element(target, R, theta, shifted)
        except CoordinateSingularityError:
            return name, False
        matches = all(
            _close(standardized.coefficients[key], getattr(expected, key), float_mode)
            for key in ('tt', 'tr', 'rr')
        )
        return name, matches
