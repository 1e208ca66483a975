"""
Coefficient expressions as sympy trees over the variables R, theta, lambda
and the constants G, M, c, eps. The transition H_a enters as the undefined
function ``H``, so c f_M = H(lambda).

Trees are compiled with ``sympy.lambdify`` into plain Python arithmetic and
evaluated over any scalar field the operators support: exact rationals, floats
or truncated series. They serialize to the prefix form printed by
``sympy.srepr``, e.g. ``Mul(Integer(-1), Pow(Symbol('lambda'), Integer(-1)))``.
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import parse_expr
from sympy.printing.pycode import PythonCodePrinter

from infinitesimal.exceptions import SeriesError
from infinitesimal.series import LCNumber, standard_part
from transition.functions import h_eval

from .exceptions import CoordinateSingularityError, ExpressionParseError, UnboundSymbolError

logger = logging.getLogger(__name__)

R, THETA, LAMBDA = sympy.symbols('R theta lambda')
G, M, C, EPS = sympy.symbols('G M c eps')
H = sympy.Function('H')

VARIABLES = (R, THETA, LAMBDA)
CONSTANTS = (G, M, C, EPS)
FUNCTIONS = ('H', 'sin')

_TRANSITION = sympy.Symbol('transition')
_ARGUMENTS = VARIABLES + CONSTANTS + (_TRANSITION,)


@dataclass(frozen=True)
class EvaluationContext:
    """Bindings for one evaluation point, plus the transition behind H(...)."""

    values: dict = field(default_factory=dict)
    transition: object = None

    def lookup(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise UnboundSymbolError(f"no value bound for {name!r}") from None


class ExactPrinter(PythonCodePrinter):
    """Python printer that keeps rationals exact and powers in the operand's own arithmetic."""

    def _print_Rational(self, expr):
        return f"Fraction({expr.p}, {expr.q})"

    def _print_Half(self, expr):
        return self._print_Rational(expr)

    def _print_Pow(self, expr, rational=False):
        return f"({self._print(expr.base)})**({self._print(expr.exp)})"


def standard_sin(value):
    """sin at a real angle, or at a series with no infinitesimal part."""
    if isinstance(value, LCNumber):
        if set(value.terms) - {0}:
            raise SeriesError("sin is only evaluated at standard angles")
        value = standard_part(value)
    return math.sin(float(value))


@functools.lru_cache(maxsize=None)
def compiled(expr):
    """Lambdified form of a tree; H(...) calls the trailing ``transition`` argument."""
    printer = ExactPrinter({
        'fully_qualified_modules': False,
        'inline': True,
        'allow_unknown_functions': False,
        'user_functions': {'sin': 'sin', 'H': _TRANSITION.name},
    })
    namespace = {'Fraction': Fraction, 'sin': standard_sin}
    return sympy.lambdify(_ARGUMENTS, expr, modules=[namespace], printer=printer)


def evaluate(expr, context):
    """Value of a tree at one point; a vanishing denominator is a coordinate singularity."""
    expr = sympy.sympify(expr)
    values = [
        context.lookup(symbol.name) if symbol in expr.free_symbols else None
        for symbol in VARIABLES + CONSTANTS
    ]
    transition = None
    if expr.has(H):
        if context.transition is None:
            raise UnboundSymbolError("no transition bound for H(...)")
        transition = functools.partial(h_eval, context.transition)
    try:
        value = compiled(expr)(*values, transition)
    except ZeroDivisionError:
        raise CoordinateSingularityError(str(expr)) from None
    if isinstance(value, int):
        return Fraction(value)
    return value


def expression_to_text(expr):
    return sympy.srepr(expr)


_PARSE_NAMESPACE = {
    '__builtins__': {},
    'Symbol': sympy.Symbol,
    'Function': sympy.Function,
    'Integer': sympy.Integer,
    'Rational': sympy.Rational,
    'Float': sympy.Float,
    'Add': sympy.Add,
    'Mul': sympy.Mul,
    'Pow': sympy.Pow,
    'sin': sympy.sin,
}


def parse_expression(text):
    """Read a tree back from ``expression_to_text`` output."""
    try:
        expr = parse_expr(str(text), local_dict={}, global_dict=dict(_PARSE_NAMESPACE), transformations=())
    except (SyntaxError, TokenError, TypeError, ValueError, NameError, AttributeError) as exc:
        raise ExpressionParseError(f"cannot read expression {text!r}: {exc}") from exc
    if not isinstance(expr, sympy.Expr):
        raise ExpressionParseError(f"{text!r} is not an expression")
    unknown = {symbol.name for symbol in expr.free_symbols} - {symbol.name for symbol in VARIABLES + CONSTANTS}
    if unknown:
        raise ExpressionParseError(f"unknown symbols {sorted(unknown)}")
    functions = {applied.func.__name__ for applied in expr.atoms(sympy.Function)}
    if functions - set(FUNCTIONS):
        raise ExpressionParseError(f"unknown functions {sorted(functions - set(FUNCTIONS))}")
    if expr.has(sympy.oo, -sympy.oo, sympy.zoo, sympy.nan):
        raise ExpressionParseError(f"non-finite literal in {text!r}")
    return expr


def expressions_identical(left, right):
    """Symbolic identity: the difference simplifies to zero."""
    return sympy.simplify(sympy.sympify(left) - sympy.sympify(right)) == 0


def _same(left, right, rel_tol):
    if isinstance(left, LCNumber) or isinstance(right, LCNumber):
        return left == right
    if isinstance(left, float) or isinstance(right, float):
        return math.isclose(left, right, rel_tol=rel_tol, abs_tol=rel_tol)
    return left == right


def expressions_agree(left, right, contexts, rel_tol=1e-12):
    """Probabilistic identity test: equal values (or the same singularity) at every point.

    Exact and series values must match exactly; floats within rel_tol.
    """
    for context in contexts:
        outcomes = []
        for expr in (left, right):
            try:
                outcomes.append(evaluate(expr, context))
            except CoordinateSingularityError:
                outcomes.append(CoordinateSingularityError)
        a, b = outcomes
        if a is CoordinateSingularityError or b is CoordinateSingularityError:
            if a is not b:
                return False
            continue
        if not _same(a, b, rel_tol):
            logger.debug("expressions disagree at %s: %s != %s", context.values, a, b)
            return False
    return True
