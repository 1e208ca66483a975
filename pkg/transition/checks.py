"""
Machine checks of the transition family: junction continuity, the global
bound |H_a| <= 2/a, finite-difference agreement of H'_a, and the standard-part
identities of the ideal model.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from infinitesimal.exceptions import UnlimitedError
from infinitesimal.series import DEFAULT_POLICY, as_scalar, standard_part

from .exceptions import InvalidTransitionError
from .functions import Branch, TransitionSpec, h_derivative, h_eval, h_eval_array

logger = logging.getLogger(__name__)

FLOAT_JUNCTION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class JunctionLimit:
    point: object
    quantity: str  # 'value' or 'derivative'
    left: object
    right: object
    passed: bool


@dataclass(frozen=True)
class JunctionReport:
    a: object
    exact: bool
    limits: tuple

    @property
    def passed(self):
        return all(limit.passed for limit in self.limits)


def _agree(left, right, exact, scale):
    if exact:
        return left == right
    return abs(left - right) <= FLOAT_JUNCTION_TOLERANCE * max(abs(left), abs(right), scale)


def junction_report(spec):
    """One-sided limits of H_a and H'_a at 0 and 2a.

    Each branch body is continuous up to its junction, so a one-sided limit
    is the adjacent body evaluated at the junction point.
    """
    if spec.is_ideal:
        raise InvalidTransitionError("junction limits are taken for a real a")
    a, formulas = spec.a, spec.formulas
    zero, two_a = a - a, 2 * a
    plan = (
        (zero, 'value', Branch.F, Branch.G),
        (two_a, 'value', Branch.G, Branch.H),
        (zero, 'derivative', Branch.F, Branch.G),
        (two_a, 'derivative', Branch.G, Branch.H),
    )
    limits = []
    for point, quantity, left_branch, right_branch in plan:
        pick = formulas.value if quantity == 'value' else formulas.derivative
        left = pick(left_branch)(a, point)
        right = pick(right_branch)(a, point)
        scale = abs(1 / a) if quantity == 'value' else abs(1 / a ** 2)
        limits.append(JunctionLimit(point, quantity, left, right, _agree(left, right, spec.is_exact, scale)))
    report = JunctionReport(a=a, exact=spec.is_exact, limits=tuple(limits))
    if not report.passed:
        logger.warning("junction mismatch for a=%s: %s", a, [l for l in limits if not l.passed])
    return report


def critical_points(spec, grid=3001):
    """Zeros of the middle branch derivative on (0, 2a]: grid scan, then brentq polish."""
    a = float(spec.a)
    dg = spec.formulas.derivative(Branch.G)
    xs = np.linspace(0.0, 3 * a, grid)
    ys = dg(a, xs)
    roots = []
    for i in range(grid - 1):
        if ys[i] == 0:
            roots.append(float(xs[i]))
        elif ys[i] * ys[i + 1] < 0:
            roots.append(brentq(lambda x: float(dg(a, x)), xs[i], xs[i + 1], xtol=1e-15))
    return [x for x in roots if 0 < x <= 2 * a * (1 + 1e-12)]


@dataclass(frozen=True)
class SupBoundReport:
    a: object
    samples: int
    sampled_max: float
    sampled_argmax: float
    extremum_x: float
    extremum_value: float
    extremum_exact: object  # exact |g_a| at a rational critical point, or None
    f_branch_sup: float
    bound: float

    @property
    def maximum(self):
        return max(self.sampled_max, self.extremum_value, self.f_branch_sup)

    @property
    def passed(self):
        return self.maximum <= self.bound


def sup_bound_check(spec, samples=10 ** 5, span=8):
    """Largest |H_a| over a dense grid, the analytic interior extremum and the
    left-branch supremum, against the bound 2/a."""
    if spec.is_ideal:
        raise InvalidTransitionError("the sampled bound check needs a real a")
    if samples < 1:
        raise ValueError("samples must be positive")
    a = float(spec.a)
    xs = np.linspace(-span * a, (2 + span) * a, samples)
    values = np.abs(h_eval_array(spec, xs))
    index = int(np.argmax(values))

    g = spec.formulas.value(Branch.G)
    extremum_x, extremum_value, extremum_exact = 0.0, 0.0, None
    for root in critical_points(spec):
        value = abs(float(g(a, root)))
        if value > extremum_value:
            extremum_x, extremum_value = root, value
    if spec.is_exact and extremum_value:
        # recover a rational critical point when the polished root is one
        candidate = Fraction(extremum_x / a).limit_denominator(1000) * spec.a
        if spec.formulas.derivative(Branch.G)(spec.a, candidate) == 0:
            extremum_exact = abs(g(spec.a, candidate))

    # 1/(x - a) is monotone on (-inf, 0], so its supremum sits at x = 0
    f_branch_sup = abs(float(spec.formulas.value(Branch.F)(a, 0.0)))
    report = SupBoundReport(
        a=spec.a,
        samples=samples,
        sampled_max=float(values[index]),
        sampled_argmax=float(xs[index]),
        extremum_x=extremum_x,
        extremum_value=extremum_value,
        extremum_exact=extremum_exact,
        f_branch_sup=f_branch_sup,
        bound=float(2 / spec.a),
    )
    logger.debug("sup bound for a=%s: max %s against %s", spec.a, report.maximum, report.bound)
    return report


@dataclass(frozen=True)
class DifferenceRow:
    x: float
    kind: str  # 'central', 'left' or 'right'
    numeric: float
    analytic: float
    tolerance: float

    @property
    def error(self):
        return abs(self.numeric - self.analytic)

    @property
    def passed(self):
        return self.error <= self.tolerance


def finite_difference_check(spec, points, step=1e-5, tolerance=1e-8):
    """Central differences away from the junctions; one-sided first-order
    differences, with an O(step) tolerance, at the junctions themselves."""
    if spec.is_ideal:
        raise InvalidTransitionError("finite differences need a real a")
    a = float(spec.a)
    real = TransitionSpec(a, spec.formulas)
    junctions = (0.0, 2 * a)
    one_sided_tolerance = 10 * step / min(a, 1.0) ** 3
    rows = []
    for x in map(float, points):
        if any(abs(x - j) <= step for j in junctions):
            j = min(junctions, key=lambda p: abs(x - p))
            left_branch, right_branch = (Branch.F, Branch.G) if j == 0.0 else (Branch.G, Branch.H)
            left = (float(h_eval(real, j)) - float(h_eval(real, j - step))) / step
            right = (float(h_eval(real, j + step)) - float(h_eval(real, j))) / step
            rows.append(DifferenceRow(j, 'left', left, float(spec.formulas.derivative(left_branch)(a, j)),
                                      one_sided_tolerance))
            rows.append(DifferenceRow(j, 'right', right, float(spec.formulas.derivative(right_branch)(a, j)),
                                      one_sided_tolerance))
        else:
            central = (float(h_eval(real, x + step)) - float(h_eval(real, x - step))) / (2 * step)
            rows.append(DifferenceRow(x, 'central', central, float(h_derivative(real, x)), tolerance))
    return rows


@dataclass(frozen=True)
class IdentityRow:
    x: object
    value: object
    expected: object  # None when the standard part must not exist
    standard: object  # None when unlimited

    @property
    def passed(self):
        return self.standard == self.expected


def standard_part_identity_check(xs, policy=DEFAULT_POLICY):
    """st(H_e(x)) = 1/x for standard x < 0, 0 for x > 0, and no standard part at 0."""
    spec = TransitionSpec.ideal(policy)
    rows = []
    for x in map(as_scalar, xs):
        value = h_eval(spec, x)
        expected = 1 / x if x < 0 else (0 if x > 0 else None)
        try:
            standard = standard_part(value)
        except UnlimitedError:
            standard = None
        rows.append(IdentityRow(x, value, expected, standard))
    return rows


@dataclass(frozen=True)
class SampleRow:
    x: object
    value: object
    derivative: object


def sample_table(spec, lo, hi, samples):
    """(x, H_a(x), H'_a(x)) rows on an evenly spaced grid.

    A real a is sampled in float mode over a numpy grid; the ideal model is
    sampled at exact rational points and yields series values.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if not spec.is_ideal:
        xs = np.linspace(float(lo), float(hi), samples)
        values = h_eval_array(spec, xs)
        derivatives = h_eval_array(spec, xs, derivative=True)
        return [SampleRow(float(x), float(v), float(d)) for x, v, d in zip(xs, values, derivatives)]
    lo, hi = as_scalar(lo), as_scalar(hi)
    if samples == 1:
        grid = [lo]
    else:
        grid = [lo + (hi - lo) * Fraction(k, samples - 1) for k in range(samples)]
    return [SampleRow(x, h_eval(spec, x), h_derivative(spec, x)) for x in grid]
