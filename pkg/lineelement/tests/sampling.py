from fractions import Fraction

from lineelement.elements import Regime


def sample_points(rng, consts, count, regime):
    """(R, theta) pairs drawn at rational points of the given regime."""
    radius = consts.schwarzschild_radius
    points = []
    for _ in range(count):
        if regime is Regime.INTERIOR:
            R_value = radius * Fraction(rng.randint(1, 999), 1000)
        elif regime is Regime.EXTERIOR:
            R_value = radius * (1 + Fraction(rng.randint(1, 900), 100))
        else:
            R_value = radius
        points.append((R_value, Fraction(rng.randint(1, 314), 100)))
    return points
