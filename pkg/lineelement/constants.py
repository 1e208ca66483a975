from dataclasses import dataclass
from fractions import Fraction

from infinitesimal.series import as_scalar

from .exceptions import InvalidConstantsError

SI_G = 6.67430e-11  # m^3 kg^-1 s^-2
SI_C = 299792458.0  # m s^-1


@dataclass(frozen=True)
class PhysicalConstants:
    """G, M and c; geometric units (G = c = 1) unless stated otherwise."""

    G: object = Fraction(1)
    M: object = Fraction(1)
    c: object = Fraction(1)
    units: str = 'geometric'

    def __post_init__(self):
        for name in ('G', 'M', 'c'):
            try:
                value = as_scalar(getattr(self, name))
            except (TypeError, ValueError) as exc:
                raise InvalidConstantsError(f"{name} must be a real number") from exc
            if not value > 0:
                raise InvalidConstantsError(f"{name} must be strictly positive, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def si(cls, M):
        """SI units; float mode, M in kilograms."""
        return cls(G=SI_G, M=float(M), c=SI_C, units='si')

    @property
    def schwarzschild_radius(self):
        return 2 * self.G * self.M / self.c ** 2

    def as_bindings(self):
        return {'G': self.G, 'M': self.M, 'c': self.c}

    def to_dict(self):
        return {'G': str(self.G), 'M': str(self.M), 'c': str(self.c), 'units': self.units}
