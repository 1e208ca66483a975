"""
Line elements and the dU = dt + f_M(R) dR substitution.

Coefficients are stored per differential pair in the order
(dT dT, dT dR, dR dR, dtheta dtheta, dphi dphi); the dT dR entry is the full
cross-term coefficient, so the metric component is half of it.
"""

import enum
import logging
import re
from dataclasses import dataclass
from fractions import Fraction

import sympy

from infinitesimal.exceptions import UnlimitedError
from infinitesimal.series import (
    DEFAULT_POLICY,
    LCNumber,
    TruncationPolicy,
    as_scalar,
    format_series,
    is_infinitesimal,
    lc_epsilon,
    order_of,
    parse_series,
    standard_part,
)
from transition.functions import TransitionSpec, f_M_eval

from .constants import PhysicalConstants
from .exceptions import CoordinateSingularityError, InvalidRadiusError, RegimeMismatchError
from .expressions import (
    EPS,
    LAMBDA,
    THETA,
    C,
    EvaluationContext,
    G,
    H,
    M,
    R,
    evaluate,
    expression_to_text,
    parse_expression,
)

logger = logging.getLogger(__name__)

ANGULAR_THETA = -R ** 2
ANGULAR_PHI = -R ** 2 * sympy.sin(THETA) ** 2

COEFFICIENT_NAMES = ('tt', 'tr', 'rr', 'thth', 'phph')

_EXACT_TEXT = re.compile(r'^-?\d+(?:/\d+)?$')


class Chart(enum.Enum):
    T = 't'
    U = 'U'


class Regime(enum.Enum):
    INTERIOR = 'interior'  # lambda < 0
    HORIZON = 'horizon'    # lambda = 0
    EXTERIOR = 'exterior'  # lambda > 0


@dataclass(frozen=True)
class LineElement:
    chart: Chart
    tt: object
    tr: object
    rr: object
    thth: object
    phph: object
    constants: PhysicalConstants
    transition: TransitionSpec = None
    f_M: object = None

    @property
    def coefficients(self):
        return {name: getattr(self, name) for name in COEFFICIENT_NAMES}


def lambda_expr():
    """lambda = 1 - 2GM/(R c^2) as an expression in R."""
    return 1 - 2 * G * M / (R * C ** 2)


def _check_radius(R_value):
    R_value = as_scalar(R_value)
    if not R_value > 0:
        raise InvalidRadiusError(f"R must be strictly positive, got {R_value}")
    return R_value


def lambda_of_R(consts, R_value):
    R_value = _check_radius(R_value)
    context = EvaluationContext({**consts.as_bindings(), 'R': R_value})
    return evaluate(lambda_expr(), context)


def regime_of_lambda(lam):
    """Regime of a lambda value; series are classified by their standard part."""
    if isinstance(lam, LCNumber):
        lam = standard_part(lam)
    if lam < 0:
        return Regime.INTERIOR
    if lam == 0:
        return Regime.HORIZON
    return Regime.EXTERIOR


def regime_classify(consts, R_value):
    return regime_of_lambda(lambda_of_R(consts, R_value))


def schwarzschild_element(consts):
    """The t-chart element: lambda (c dt)^2 - (1/lambda) dR^2 - R^2 (dtheta^2 + sin^2 theta dphi^2)."""
    return LineElement(
        chart=Chart.T,
        tt=LAMBDA * C ** 2,
        tr=sympy.Integer(0),
        rr=-1 / LAMBDA,
        thth=ANGULAR_THETA,
        phph=ANGULAR_PHI,
        constants=consts,
    )


def eddington_finkelstein_element(consts):
    """The standardized U-chart element: lambda (c dU)^2 - 2c dU dR - R^2 (...)."""
    return LineElement(
        chart=Chart.U,
        tt=LAMBDA * C ** 2,
        tr=-2 * C,
        rr=sympy.Integer(0),
        thth=ANGULAR_THETA,
        phph=ANGULAR_PHI,
        constants=consts,
    )


def transform_u_substitution(elem, spec, consts=None):
    """Substitute dt = dU - f_M dR with lambda shifted to lambda - a.

    With tt and rr the shifted t-chart coefficients:
        UU = tt,  UR = -2 tt f_M,  RR = tt f_M^2 + rr  (the b-term),
    where c f_M = H_a(lambda). The angular sector is carried over untouched.
    """
    if elem.chart is not Chart.T:
        raise ValueError("the substitution starts from a t-chart element")
    if elem.tr != 0:
        raise ValueError("the substitution needs a diagonal t-chart element")
    shifted = LAMBDA - EPS
    tt = elem.tt.subs(LAMBDA, shifted)
    rr = elem.rr.subs(LAMBDA, shifted)
    f_M = H(LAMBDA) / C
    return LineElement(
        chart=Chart.U,
        tt=tt,
        tr=-2 * tt * f_M,
        rr=tt * f_M ** 2 + rr,
        thth=elem.thth,
        phph=elem.phph,
        constants=consts or elem.constants,
        transition=spec,
        f_M=f_M,
    )


def point_context(elem, R_value=None, theta=None, lam=None):
    """Bindings for one point: constants, R, theta, lambda (from R unless given) and eps."""
    values = dict(elem.constants.as_bindings())
    if R_value is not None:
        values['R'] = _check_radius(R_value)
    if theta is not None:
        values['theta'] = as_scalar(theta)
    if lam is None:
        if R_value is None:
            raise ValueError("either R or lambda must be given")
        lam = lambda_of_R(elem.constants, R_value)
    values['lambda'] = as_scalar(lam)
    if elem.transition is not None:
        values['eps'] = elem.transition.a
    return EvaluationContext(values, elem.transition)


@dataclass(frozen=True)
class ElementValues:
    chart: Chart
    lam: object
    tt: object
    tr: object
    rr: object
    thth: object
    phph: object
    f_M: object = None


def evaluate_element(elem, R_value, theta, lam=None):
    """All five coefficients (and f_M for U-chart elements) at one point."""
    context = point_context(elem, R_value, theta, lam)
    values = {name: evaluate(expr, context) for name, expr in elem.coefficients.items()}
    f_M = evaluate(elem.f_M, context) if elem.f_M is not None else None
    return ElementValues(chart=elem.chart, lam=context.values['lambda'], f_M=f_M, **values)


def b_coefficient(spec, lam, consts):
    """(lambda - a) c^2 f_M^2 - 1/(lambda - a), the dR^2 coefficient after the substitution."""
    elem = transform_u_substitution(schwarzschild_element(consts), spec, consts)
    return evaluate(elem.rr, point_context(elem, lam=lam))


@dataclass(frozen=True)
class StandardizedElement:
    chart: Chart
    regime: Regime
    tt: object
    tr: object
    rr: object
    thth: object
    phph: object
    st_f_M: object = None  # None when f_M is absent or unlimited
    f_M_unlimited: bool = False
    st_f_M_dR: object = None

    @property
    def coefficients(self):
        return {name: getattr(self, name) for name in COEFFICIENT_NAMES}


def standardize_element(values, regime, dR_order=3):
    """Take the standard part of every coefficient.

    An unlimited coefficient raises UnlimitedError. The raw f_M may be
    unlimited (at the horizon); that is recorded, together with st(f_M dR)
    for dR = e^dR_order, instead of failing.
    """
    actual = regime_of_lambda(values.lam)
    if actual is not regime:
        raise RegimeMismatchError(f"lambda = {values.lam} lies in the {actual.value} regime, not {regime.value}")
    coefficients = {name: standard_part(getattr(values, name)) for name in COEFFICIENT_NAMES}
    st_f_M, unlimited, st_f_M_dR = None, False, None
    if values.f_M is not None:
        try:
            st_f_M = standard_part(values.f_M)
        except UnlimitedError:
            unlimited = True
            logger.info("f_M = %s has no standard part; recording st(f_M dR) instead", values.f_M)
        if isinstance(values.f_M, LCNumber):
            st_f_M_dR = standard_part(values.f_M * lc_epsilon(dR_order, values.f_M.policy))
    return StandardizedElement(
        chart=values.chart,
        regime=regime,
        st_f_M=st_f_M,
        f_M_unlimited=unlimited,
        st_f_M_dR=st_f_M_dR,
        **coefficients,
    )


def block_determinant(values):
    """det [[tt, tr/2], [tr/2, rr]] of the time-radius block."""
    return values.tt * values.rr - (values.tr / 2) ** 2


@dataclass(frozen=True)
class ProductRow:
    lam: object
    f_M: object
    product: object
    leading_exponent: object  # None for an exact zero
    infinitesimal: bool


@dataclass(frozen=True)
class ProductReport:
    dR_order: Fraction
    rows: tuple

    @property
    def bound(self):
        """Worst case allowed by |H_e| <= 2/e: leading exponent dR_order - 1."""
        return self.dR_order - 1

    @property
    def worst_exponent(self):
        exponents = [row.leading_exponent for row in self.rows if row.leading_exponent is not None]
        return min(exponents) if exponents else None

    @property
    def passed(self):
        worst = self.worst_exponent
        return all(row.infinitesimal for row in self.rows) and (worst is None or worst >= self.bound)


def infinitesimal_product_check(spec, lambdas, dR_order=3, consts=None):
    """f_M(lambda) dR is infinitesimal for dR = e^dR_order, so e = dR^(1/dR_order)."""
    if not spec.is_ideal:
        raise ValueError("the product check runs on the ideal model")
    consts = consts or PhysicalConstants()
    dR_order = Fraction(dR_order)
    dR = lc_epsilon(dR_order, spec.a.policy)
    rows = []
    for lam in lambdas:
        f_M = f_M_eval(spec, lam, consts.c)
        product = f_M * dR
        rows.append(ProductRow(lam, f_M, product, order_of(product), is_infinitesimal(product)))
    return ProductReport(dR_order=dR_order, rows=tuple(rows))


@dataclass(frozen=True)
class ConstraintRow:
    lam: object
    name: str
    product: object  # None when the coefficient is singular at lam
    infinitesimal: bool

    @property
    def singular(self):
        return self.product is None


def coefficient_constraint_check(spec, lambdas, dR_order=3, consts=None):
    """G dR infinitesimal for every transformed time-radius coefficient G."""
    consts = consts or PhysicalConstants()
    elem = transform_u_substitution(schwarzschild_element(consts), spec, consts)
    policy = spec.a.policy if spec.is_ideal else DEFAULT_POLICY
    dR = lc_epsilon(dR_order, policy)
    rows = []
    for lam in lambdas:
        context = point_context(elem, lam=lam)
        for name in ('tt', 'tr', 'rr'):
            try:
                product = evaluate(getattr(elem, name), context) * dR
            except CoordinateSingularityError:
                rows.append(ConstraintRow(lam, name, None, False))
                continue
            rows.append(ConstraintRow(lam, name, product, is_infinitesimal(product)))
    return rows


def _scalar_to_text(value):
    return repr(value) if isinstance(value, float) else str(value)


def _text_to_scalar(text):
    if _EXACT_TEXT.match(text):
        return Fraction(text)
    return float(text)


def element_to_dict(elem):
    """JSON-ready form: chart, srepr coefficients, constants and transition."""
    payload = {
        'chart': elem.chart.value,
        'coefficients': {name: expression_to_text(expr) for name, expr in elem.coefficients.items()},
        'constants': elem.constants.to_dict(),
        'f_M': expression_to_text(elem.f_M) if elem.f_M is not None else None,
        'transition': None,
    }
    if elem.transition is not None:
        a = elem.transition.a
        if isinstance(a, LCNumber):
            payload['transition'] = {
                'ideal': True,
                'a': format_series(a),
                'window': str(a.policy.window),
                'max_terms': a.policy.max_terms,
            }
        else:
            payload['transition'] = {'ideal': False, 'a': _scalar_to_text(a)}
    return payload


def element_from_dict(payload):
    constants = payload['constants']
    consts = PhysicalConstants(
        G=_text_to_scalar(constants['G']),
        M=_text_to_scalar(constants['M']),
        c=_text_to_scalar(constants['c']),
        units=constants.get('units', 'geometric'),
    )
    transition = None
    if payload.get('transition'):
        block = payload['transition']
        if block['ideal']:
            policy = TruncationPolicy(Fraction(block['window']), int(block['max_terms']))
            transition = TransitionSpec(parse_series(block['a'], policy))
        else:
            transition = TransitionSpec(_text_to_scalar(block['a']))
    coefficients = {name: parse_expression(text) for name, text in payload['coefficients'].items()}
    f_M = parse_expression(payload['f_M']) if payload.get('f_M') else None
    return LineElement(
        chart=Chart(payload['chart']),
        constants=consts,
        transition=transition,
        f_M=f_M,
        **coefficients,
    )
