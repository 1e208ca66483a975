"""
Radial null rays of the t-chart and U-chart elements.

Setting dS^2 = 0 with dtheta = dphi = 0 gives the slopes integrated here:

    t-chart:  c dt/dR = -1/lambda (ingoing), +1/lambda (outgoing)
    U-chart:  c dU/dR = 0 (ingoing),         2/lambda (outgoing)
"""

import enum
import math
from dataclasses import dataclass

from infinitesimal.series import as_scalar
from lineelement.elements import Chart, lambda_of_R

from .exceptions import CoordinatePoleError, InvalidRayError


class Direction(enum.Enum):
    INGOING = 'in'
    OUTGOING = 'out'


@dataclass(frozen=True)
class RayState:
    R: float
    T: float
    chart: Chart
    direction: Direction

    def __post_init__(self):
        if not isinstance(self.chart, Chart):
            raise InvalidRayError(f"unknown chart {self.chart!r}")
        if not isinstance(self.direction, Direction):
            raise InvalidRayError(f"unknown direction {self.direction!r}")
        if not (math.isfinite(self.R) and self.R > 0):
            raise InvalidRayError(f"R must be strictly positive, got {self.R}")
        if not math.isfinite(self.T):
            raise InvalidRayError(f"T must be finite, got {self.T}")


@dataclass(frozen=True)
class IntegratorConfig:
    """Step control and stop conditions.

    Ingoing rays stop at r_floor and outgoing rays at r_ceiling; when unset
    they default to half and ten times the Schwarzschild radius.
    """

    initial_step: float = 1e-2
    min_step: float = 1e-9
    max_step: float = 0.5
    rel_tol: float = 1e-10
    r_floor: float = None
    r_ceiling: float = None
    coordinate_ceiling: float = 1e8

    def __post_init__(self):
        for name in ('initial_step', 'min_step', 'max_step', 'rel_tol', 'coordinate_ceiling'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidRayError(f"{name} must be strictly positive, got {value}")
        if self.min_step > self.max_step:
            raise InvalidRayError("min_step exceeds max_step")
        if self.r_floor is not None and not self.r_floor > 0:
            raise InvalidRayError(f"r_floor must be strictly positive, got {self.r_floor}")
        if self.r_floor is not None and self.r_ceiling is not None and self.r_ceiling <= self.r_floor:
            raise InvalidRayError("r_ceiling must lie above r_floor")

    def stop_radius(self, direction, consts):
        radius = float(consts.schwarzschild_radius)
        if direction is Direction.INGOING:
            return self.r_floor if self.r_floor is not None else radius / 2
        return self.r_ceiling if self.r_ceiling is not None else 10 * radius


def has_pole(chart, direction):
    """Whether the slope of this ray family diverges at the horizon."""
    return not (chart is Chart.U and direction is Direction.INGOING)


def radial_null_slope(chart, consts, R, direction):
    """c dT/dR along a radial null ray."""
    R = as_scalar(R)
    if chart is Chart.U and direction is Direction.INGOING:
        return R - R
    lam = lambda_of_R(consts, R)
    if lam == 0:
        raise CoordinatePoleError(R)
    if chart is Chart.U:
        return 2 / lam
    return -1 / lam if direction is Direction.INGOING else 1 / lam


def closed_form_time(chart, direction, consts, R, R0, T0):
    """T at R on the ray through (R0, T0), from the antiderivative of the slope.

    With F(R) = R + R_s ln|R - R_s|:
        t-chart:  c t = -F(R) + C (ingoing), F(R) + C (outgoing)
        U-chart:  U constant (ingoing),      c U = 2 F(R) + C (outgoing)
    """
    if chart is Chart.U and direction is Direction.INGOING:
        return float(T0)
    radius = float(consts.schwarzschild_radius)
    R, R0 = float(R), float(R0)
    for value in (R, R0):
        if value == radius:
            raise CoordinatePoleError(value)
    if (R - radius) * (R0 - radius) < 0:
        raise CoordinatePoleError(radius)

    def antiderivative(x):
        return x + radius * math.log(abs(x - radius))

    if chart is Chart.U:
        scale = 2.0
    else:
        scale = -1.0 if direction is Direction.INGOING else 1.0
    return float(T0) + scale * (antiderivative(R) - antiderivative(R0)) / float(consts.c)
