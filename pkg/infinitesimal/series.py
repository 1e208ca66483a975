"""
Truncated Levi-Civita series in one positive infinitesimal e.

A number is a finite sum of terms ``c * e^q`` with exact rational exponents
``q``. Terms are kept sorted by exponent with nonzero coefficients, and every
result is cut back to the exponents within ``window`` of its leading (lowest)
exponent, and to at most ``max_terms`` terms.

Coefficients stay exact (``Fraction``) while every input is rational; any
float input switches the affected result to float coefficients.
"""

import logging
import math
import numbers
import re
from collections.abc import Mapping
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .exceptions import (
    NonFiniteError,
    SeriesDivisionByZero,
    SeriesError,
    SeriesParseError,
    UnlimitedError,
)

logger = logging.getLogger(__name__)

Rational = Fraction


def as_rational(value):
    """Read an exact rational from an int, Fraction, Decimal, finite float or 'p/q' text."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise NonFiniteError(f"cannot embed {value}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SeriesParseError(f"not a rational: {value!r}") from exc
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteError(f"cannot embed {value}")
        return Fraction(value)
    raise TypeError(f"cannot read a rational from {type(value).__name__}")


def _coefficient(value):
    """Normalize a real coefficient: exact inputs become Fraction, floats stay floats."""
    if isinstance(value, (Fraction, float)) and not isinstance(value, bool):
        if isinstance(value, float) and not math.isfinite(value):
            raise NonFiniteError(f"cannot embed {value}")
        return value
    if isinstance(value, (numbers.Rational, Decimal)) and not isinstance(value, bool):
        return as_rational(value)
    if isinstance(value, numbers.Real) and not isinstance(value, bool):
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteError(f"cannot embed {value}")
        return value
    raise TypeError(f"{type(value).__name__} is not a real coefficient")


def as_scalar(value):
    """Bring a value into a scalar field: series stay series, exact reals become Fraction."""
    if isinstance(value, LCNumber):
        return value
    return _coefficient(value)


@dataclass(frozen=True)
class TruncationPolicy:
    """Finite model of the infinite series: exponent window and term cap."""

    window: Fraction = Fraction(4)
    max_terms: int = 32

    def __post_init__(self):
        object.__setattr__(self, 'window', as_rational(self.window))
        if self.window <= 0:
            raise ValueError("truncation window must be positive")
        if self.max_terms < 2:
            raise ValueError("max_terms must be at least 2")

    def joined(self, other):
        """The narrower of two policies, used when operands disagree."""
        if other is self or other == self:
            return self
        return TruncationPolicy(min(self.window, other.window), min(self.max_terms, other.max_terms))


DEFAULT_POLICY = TruncationPolicy()


def _truncate(merged, policy):
    items = sorted((q, c) for q, c in merged.items() if c != 0)
    if not items:
        return ()
    limit = items[0][0] + policy.window
    kept = tuple((q, c) for q, c in items if q <= limit)
    return kept[:policy.max_terms]


class LCNumber:
    """An element of the truncated Levi-Civita field.

    Instances are immutable; arithmetic returns new canonical instances.
    """

    __slots__ = ('_terms', '_policy')

    def __init__(self, terms=(), policy=DEFAULT_POLICY):
        items = terms.items() if isinstance(terms, Mapping) else terms
        merged = {}
        for exponent, coefficient in items:
            q = as_rational(exponent)
            merged[q] = merged.get(q, 0) + _coefficient(coefficient)
        self._terms = _truncate(merged, policy)
        self._policy = policy

    @classmethod
    def _canonical(cls, merged, policy):
        number = object.__new__(cls)
        number._terms = _truncate(merged, policy)
        number._policy = policy
        return number

    @property
    def terms(self):
        """Exponent -> coefficient, in increasing exponent order."""
        return dict(self._terms)

    @property
    def policy(self):
        return self._policy

    @property
    def truncation_order(self):
        return self._policy.window

    @property
    def is_exact(self):
        return all(isinstance(c, Fraction) for _, c in self._terms)

    def __repr__(self):
        return f"LCNumber({format_series(self)!r})"

    def __str__(self):
        return format_series(self)

    def __bool__(self):
        return bool(self._terms)

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and self._terms[0][0] == 0:
            return hash(self._terms[0][1])
        return hash(self._terms)

    def __eq__(self, other):
        other = _coerce(other, self._policy)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __lt__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_cmp(self, other) < 0

    def __le__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_cmp(self, other) <= 0

    def __gt__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_cmp(self, other) > 0

    def __ge__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_cmp(self, other) >= 0

    def __neg__(self):
        return lc_neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        return lc_neg(self) if self._terms and self._terms[0][1] < 0 else self

    def __add__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_sub(other, self)

    def __mul__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other, self._policy)
        return NotImplemented if other is NotImplemented else lc_div(other, self)

    def __pow__(self, exponent):
        return lc_pow(self, exponent)


def _coerce(value, policy):
    if isinstance(value, LCNumber):
        return value
    if isinstance(value, (numbers.Real, Decimal)) and not isinstance(value, bool):
        return lc_from_real(value, policy)
    return NotImplemented


def lc_from_real(x, policy=DEFAULT_POLICY):
    """Embed a finite real as the constant series x * e^0."""
    coefficient = _coefficient(x)
    return LCNumber._canonical({Fraction(0): coefficient}, policy)


def lc_epsilon(q=1, policy=DEFAULT_POLICY):
    """The monomial e^q: infinitesimal for q > 0, infinite for q < 0."""
    return LCNumber._canonical({as_rational(q): Fraction(1)}, policy)


def monad_point(r, offsets, policy=DEFAULT_POLICY):
    """r plus infinitesimal offsets {q: c} with every q > 0, a member of the monad of r."""
    merged = {Fraction(0): _coefficient(r)}
    for exponent, coefficient in dict(offsets).items():
        q = as_rational(exponent)
        if q <= 0:
            raise ValueError(f"offset exponent {q} is not infinitesimal")
        merged[q] = merged.get(q, 0) + _coefficient(coefficient)
    return LCNumber._canonical(merged, policy)


def lc_add(x, y):
    policy = x._policy.joined(y._policy)
    merged = dict(x._terms)
    for q, c in y._terms:
        merged[q] = merged.get(q, 0) + c
    return LCNumber._canonical(merged, policy)


def lc_neg(x):
    return LCNumber._canonical({q: -c for q, c in x._terms}, x._policy)


def lc_sub(x, y):
    return lc_add(x, lc_neg(y))


def lc_mul(x, y):
    """Cauchy product, skipping pairs that land beyond the product's window."""
    policy = x._policy.joined(y._policy)
    if not x._terms or not y._terms:
        return LCNumber._canonical({}, policy)
    limit = x._terms[0][0] + y._terms[0][0] + policy.window
    merged = {}
    for qa, ca in x._terms:
        for qb, cb in y._terms:
            q = qa + qb
            if q > limit:
                break
            merged[q] = merged.get(q, 0) + ca * cb
    return LCNumber._canonical(merged, policy)


def lc_inv(x):
    """Multiplicative inverse through the truncated geometric series.

    With x = c0 e^q0 (1 + d) and d infinitesimal, 1/x = e^-q0 / c0 * sum (-d)^k.
    """
    if not x._terms:
        raise SeriesDivisionByZero("the zero series has no inverse")
    policy = x._policy
    q0, c0 = x._terms[0]
    inverse_lead = LCNumber._canonical({-q0: 1 / c0}, policy)
    if len(x._terms) == 1:
        return inverse_lead
    neg_d = LCNumber._canonical({q - q0: -(c / c0) for q, c in x._terms[1:]}, policy)
    # each power of d climbs by at least its leading exponent
    steps = math.floor(policy.window / neg_d._terms[0][0])
    total = LCNumber._canonical({Fraction(0): Fraction(1)}, policy)
    power = total
    for _ in range(steps):
        power = lc_mul(power, neg_d)
        total = lc_add(total, power)
    return lc_mul(inverse_lead, total)


def lc_div(x, y):
    return lc_mul(x, lc_inv(y))


def lc_pow(x, exponent):
    """Integer powers of any series; rational powers of the monomials e^q only."""
    if isinstance(exponent, bool):
        raise TypeError("booleans are not exponents")
    n = as_rational(exponent)
    if n.denominator != 1:
        if len(x._terms) == 1 and x._terms[0][1] == 1:
            return LCNumber._canonical({x._terms[0][0] * n: Fraction(1)}, x._policy)
        raise SeriesError(f"rational power {n} is only defined for monomials e^q")
    n = int(n)
    if n < 0:
        return lc_inv(lc_pow(x, -n))
    result = LCNumber._canonical({Fraction(0): Fraction(1)}, x._policy)
    base = x
    while n:
        if n & 1:
            result = lc_mul(result, base)
        n >>= 1
        if n:
            base = lc_mul(base, base)
    return result


def lc_cmp(x, y):
    """-1, 0 or 1; the sign of x - y is the sign of its leading coefficient."""
    if not isinstance(x, LCNumber):
        x = lc_from_real(x, y._policy if isinstance(y, LCNumber) else DEFAULT_POLICY)
    if not isinstance(y, LCNumber):
        y = lc_from_real(y, x._policy)
    difference = lc_sub(x, y)
    if not difference._terms:
        return 0
    return 1 if difference._terms[0][1] > 0 else -1


def leading_term(x):
    """(exponent, coefficient) of the dominant term, or None for zero."""
    return x._terms[0] if x._terms else None


def order_of(x):
    """Leading exponent of x; None for the zero series."""
    return x._terms[0][0] if x._terms else None


def standard_part(x):
    """The real infinitely close to a limited x.

    Raises UnlimitedError when a negative exponent is present.
    """
    if not isinstance(x, LCNumber):
        return _coefficient(x)
    if not x._terms:
        return Fraction(0)
    if x._terms[0][0] < 0:
        raise UnlimitedError(x)
    for q, c in x._terms:
        if q == 0:
            return c
    return 0.0 if isinstance(x._terms[0][1], float) else Fraction(0)


def is_infinitesimal(x):
    if not isinstance(x, LCNumber):
        return x == 0
    return not x._terms or x._terms[0][0] > 0


def is_limited(x):
    if not isinstance(x, LCNumber):
        return True
    return not x._terms or x._terms[0][0] >= 0


def _format_coefficient(c):
    return repr(c) if isinstance(c, float) else str(c)


def format_series(x):
    """Serialize as sorted ``coeff*e^(p/q)`` terms joined by `` + ``."""
    if not x._terms:
        return '0'
    return ' + '.join(f"{_format_coefficient(c)}*e^({q})" for q, c in x._terms)


_TERM = re.compile(r'^(?P<coeff>[^*\s]+)\*e\^\((?P<exp>-?\d+(?:/\d+)?)\)$')
_EXACT = re.compile(r'^-?\d+(?:/\d+)?$')


def parse_series(text, policy=DEFAULT_POLICY):
    """Read back the output of format_series; exact coefficients round-trip bit for bit."""
    text = text.strip()
    if text == '0':
        return LCNumber._canonical({}, policy)
    merged = {}
    for chunk in re.split(r'\s+\+\s+', text):
        match = _TERM.match(chunk.strip())
        if not match:
            raise SeriesParseError(f"malformed term {chunk!r}")
        raw = match.group('coeff')
        try:
            coefficient = Fraction(raw) if _EXACT.match(raw) else float(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise SeriesParseError(f"malformed coefficient {raw!r}") from exc
        try:
            q = Fraction(match.group('exp'))
        except ZeroDivisionError as exc:
            raise SeriesParseError(f"malformed exponent in {chunk!r}") from exc
        merged[q] = merged.get(q, 0) + _coefficient(coefficient)
    return LCNumber._canonical(merged, policy)
