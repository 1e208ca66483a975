"""
Adaptive Runge-Kutta-Fehlberg 4(5) integration of radial null rays over R.

The 4th order solution is propagated; its difference to the embedded 5th
order solution is the local error estimate driving the step size. A ray
whose slope has a pole at the horizon is never stepped across it: the step
is cut to half the remaining distance, and once step control asks for less
than min_step the trajectory ends with a blow-up verdict.
"""

import enum
import logging
from dataclasses import dataclass

from lineelement.constants import PhysicalConstants

from .exceptions import InvalidRayError
from .rays import Direction, IntegratorConfig, RayState, has_pole, radial_null_slope

logger = logging.getLogger(__name__)

# Fehlberg tableau: stage nodes, stage weights, 4th order weights and the
# (5th - 4th) error weights.
NODES = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
STAGES = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3554 / 2565, 1859 / 4104, -11 / 40),
)
WEIGHTS = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)
ERROR_WEIGHTS = (1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55)

GROWTH_LIMIT = 5.0
SHRINK_LIMIT = 0.2
REJECT_LIMIT = 0.1
SAFETY = 0.9


class Verdict(enum.Enum):
    COMPLETED = 'completed'
    BLOW_UP = 'blow_up'
    COORDINATE_CEILING = 'coordinate_ceiling'


@dataclass(frozen=True)
class TrajectoryPoint:
    R: float
    T: float
    local_error: float


@dataclass(frozen=True)
class Trajectory:
    start: RayState
    stop: float
    points: tuple
    verdict: Verdict
    error_estimate: float
    crossed_horizon: bool
    rejected_steps: int = 0

    @property
    def end(self):
        return self.points[-1]

    @property
    def blew_up(self):
        return self.verdict is Verdict.BLOW_UP


def rkf45_step(slope, R, T, h):
    """One Fehlberg step of dT/dR = slope(R, T); returns (T_next, error estimate)."""
    k = []
    for node, row in zip(NODES, STAGES):
        stage_T = T + h * sum(w * kj for w, kj in zip(row, k))
        k.append(slope(R + node * h, stage_T))
    T_next = T + h * sum(w * kj for w, kj in zip(WEIGHTS, k))
    error = abs(h * sum(w * kj for w, kj in zip(ERROR_WEIGHTS, k)))
    return T_next, error


def _float_constants(consts):
    return PhysicalConstants(G=float(consts.G), M=float(consts.M), c=float(consts.c), units=consts.units)


def integrate_radial_null(start, cfg=None, consts=None, stop=None):
    """Integrate T(R) along a radial null ray from start to the stop radius.

    Ingoing rays run toward smaller R and outgoing rays toward larger R; the
    stop radius defaults to the config's floor or ceiling.
    """
    cfg = cfg or IntegratorConfig()
    consts = _float_constants(consts or PhysicalConstants())
    stop = float(stop if stop is not None else cfg.stop_radius(start.direction, consts))
    if not stop > 0:
        raise InvalidRayError(f"stop radius must be strictly positive, got {stop}")
    R, T = float(start.R), float(start.T)
    sign = -1.0 if start.direction is Direction.INGOING else 1.0
    if (stop - R) * sign < 0:
        raise InvalidRayError(f"a {start.direction.value}going ray from R = {R} cannot reach R = {stop}")

    c = float(consts.c)
    radius = float(consts.schwarzschild_radius)
    guarded = has_pole(start.chart, start.direction)

    def slope(r, _t):
        return radial_null_slope(start.chart, consts, r, start.direction) / c

    slope(R, T)  # a ray starting on a pole fails here
    points = [TrajectoryPoint(R, T, 0.0)]
    verdict = Verdict.COMPLETED
    error_total = 0.0
    rejected = 0
    h = cfg.initial_step
    while R != stop:
        remaining = abs(stop - R)
        step = min(h, cfg.max_step, remaining)
        if guarded and (R + sign * step - radius) * (R - radius) <= 0:
            step = min(step, abs(R - radius) / 2)
        if step < cfg.min_step and step < remaining:
            logger.info("blow-up at R=%s, T=%s: step %s below %s", R, T, step, cfg.min_step)
            verdict = Verdict.BLOW_UP
            break
        T_next, error = rkf45_step(slope, R, T, sign * step)
        tol = cfg.rel_tol * max(1.0, abs(T), abs(T_next))
        if error > tol:
            rejected += 1
            h = step * max(REJECT_LIMIT, SAFETY * (tol / error) ** 0.25)
            logger.debug("rejected step %s at R=%s (error %s > %s)", step, R, error, tol)
            continue
        R = stop if step == remaining else R + sign * step
        T = T_next
        error_total += error
        points.append(TrajectoryPoint(R, T, error))
        if abs(T) > cfg.coordinate_ceiling:
            verdict = Verdict.COORDINATE_CEILING
            break
        factor = GROWTH_LIMIT if error == 0 else min(GROWTH_LIMIT, max(SHRINK_LIMIT, SAFETY * (tol / error) ** 0.2))
        h = step * factor

    crossed = (float(start.R) - radius) * (R - radius) < 0
    logger.debug("%s-chart %sgoing ray: %d points, verdict %s, %d rejected",
                 start.chart.value, start.direction.value, len(points), verdict.value, rejected)
    return Trajectory(
        start=start,
        stop=stop,
        points=tuple(points),
        verdict=verdict,
        error_estimate=error_total,
        crossed_horizon=crossed,
        rejected_steps=rejected,
    )
