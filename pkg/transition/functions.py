"""
The transition family H_a and its derivative.

    H_a(x) = f_a(x) = 1/(x - a)                                 x <= 0
             g_a(x) = -x^3/(2a^4) + 7x^2/(4a^3) - x/a^2 - 1/a    0 < x <= 2a
             h_a(x) = 0                                         x > 2a

Everything here is generic over the scalar field: ``a`` and ``x`` may be exact
rationals, floats or truncated series (``a = e`` for the ideal model).
"""

import enum
import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from infinitesimal.series import DEFAULT_POLICY, LCNumber, as_scalar, lc_epsilon

from .exceptions import InvalidTransitionError

logger = logging.getLogger(__name__)


class Branch(enum.Enum):
    F = 'F'  # (-inf, 0]
    G = 'G'  # (0, 2a]
    H = 'H'  # (2a, +inf)


def _f(a, x):
    return 1 / (x - a)


def _df(a, x):
    return -1 / (x - a) ** 2


def _g(a, x):
    return -x ** 3 / (2 * a ** 4) + 7 * x ** 2 / (4 * a ** 3) - x / a ** 2 - 1 / a


def _dg(a, x):
    return -3 * x ** 2 / (2 * a ** 4) + 7 * x / (2 * a ** 3) - 1 / a ** 2


def _zero(a, x):
    return a - a


@dataclass(frozen=True)
class BranchFormulas:
    """Branch bodies of a transition family; alternate middle pieces plug in here."""

    name: str
    f: Callable
    df: Callable
    g: Callable
    dg: Callable
    h: Callable = _zero
    dh: Callable = _zero

    def value(self, branch):
        return {Branch.F: self.f, Branch.G: self.g, Branch.H: self.h}[branch]

    def derivative(self, branch):
        return {Branch.F: self.df, Branch.G: self.dg, Branch.H: self.dh}[branch]


PRINTED_CUBIC = BranchFormulas(name='printed-cubic', f=_f, df=_df, g=_g, dg=_dg)


@dataclass(frozen=True)
class TransitionSpec:
    a: object
    formulas: BranchFormulas = PRINTED_CUBIC

    def __post_init__(self):
        try:
            a = as_scalar(self.a)
        except (TypeError, ValueError) as exc:
            raise InvalidTransitionError(f"a must be a real or a series, got {self.a!r}") from exc
        if not a > 0:
            raise InvalidTransitionError(f"a must be strictly positive, got {a}")
        object.__setattr__(self, 'a', a)

    @classmethod
    def ideal(cls, policy=DEFAULT_POLICY, formulas=PRINTED_CUBIC):
        """The ideal-model transition with a = e."""
        return cls(lc_epsilon(1, policy), formulas)

    @property
    def is_ideal(self):
        return isinstance(self.a, LCNumber)

    @property
    def is_exact(self):
        if self.is_ideal:
            return self.a.is_exact
        return not isinstance(self.a, float)

    @property
    def bound(self):
        """The global bound 2/a on |H_a|."""
        return 2 / self.a


def branch_of(spec, x):
    """Select the branch by exact order comparison against 0 and 2a."""
    x = as_scalar(x)
    if x <= 0:
        branch = Branch.F
    elif x <= 2 * spec.a:
        branch = Branch.G
    else:
        branch = Branch.H
    logger.debug("x=%s falls in branch %s", x, branch.value)
    return branch


def h_eval(spec, x):
    x = as_scalar(x)
    return spec.formulas.value(branch_of(spec, x))(spec.a, x)


def h_derivative(spec, x):
    x = as_scalar(x)
    return spec.formulas.derivative(branch_of(spec, x))(spec.a, x)


def f_M_eval(spec, lam, c):
    """The transformation function f_M = H_a(lambda)/c."""
    return h_eval(spec, lam) / as_scalar(c)


def h_eval_array(spec, xs, derivative=False):
    """Vectorized float evaluation over a numpy grid (real a only)."""
    if spec.is_ideal:
        raise InvalidTransitionError("array evaluation needs a real a")
    a = float(spec.a)
    xs = np.asarray(xs, dtype=float)
    pick = spec.formulas.derivative if derivative else spec.formulas.value
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.select(
            [xs <= 0, xs <= 2 * a],
            [pick(Branch.F)(a, xs), pick(Branch.G)(a, xs)],
            default=pick(Branch.H)(a, xs),
        )
