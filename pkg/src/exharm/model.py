"""Model parameters and the analytic center-of-mass ground state.

The two-particle Hamiltonian separates exactly into a center-of-mass
oscillator of total mass ``M = 1 + m`` and a relative-motion problem of
reduced mass ``mu = m / (1 + m)``. Everything is in Hartree atomic units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class ParameterError(ValueError):
    """Raised for non-physical model parameters."""


@dataclass(frozen=True)
class SystemParams:
    """Free parameters of the model and the masses derived from them.

    Parameters
    ----------
    m_pcp : float
        Mass of the positively charged particle in electron masses.
    omega : float
        Trap frequency shared by both particles.
    """

    m_pcp: float
    omega: float
    total_mass: float = field(init=False)
    reduced_mass: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.m_pcp) and self.m_pcp > 0):
            raise ParameterError(f"m_pcp must be a positive finite number, got {self.m_pcp!r}")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ParameterError(f"omega must be a positive finite number, got {self.omega!r}")
        object.__setattr__(self, "total_mass", 1.0 + self.m_pcp)
        object.__setattr__(self, "reduced_mass", self.m_pcp / (1.0 + self.m_pcp))

    # short aliases used throughout the formulas
    @property
    def M(self) -> float:
        return self.total_mass

    @property
    def mu(self) -> float:
        return self.reduced_mass

    def label(self) -> str:
        return f"m={self.m_pcp:g}, omega={self.omega:g}"


def derive_params(m_pcp: float, omega: float) -> SystemParams:
    """Build :class:`SystemParams`, validating both inputs."""
    return SystemParams(float(m_pcp), float(omega))


@dataclass(frozen=True)
class ComGaussian:
    """Ground state of the 3D center-of-mass oscillator.

    ``phi(R) = (M w / pi)^(3/4) exp(-M w R^2 / 2)`` with energy ``3 w / 2``.
    """

    mass: float
    omega: float

    @property
    def exponent(self) -> float:
        """Exponent ``a`` of the probability density ``|phi|^2 ~ exp(-a R^2)``."""
        return self.mass * self.omega

    @property
    def normalization(self) -> float:
        """Prefactor of ``phi`` itself."""
        return (self.exponent / math.pi) ** 0.75

    @property
    def energy(self) -> float:
        return 1.5 * self.omega

    @property
    def mean_r2(self) -> float:
        """<R^2> = 3 / (2 M w)."""
        return 1.5 / self.exponent

    @property
    def mean_grad2(self) -> float:
        """<|grad phi|^2> = (3/2) M w, i.e. twice the mass times the kinetic energy."""
        return 1.5 * self.exponent

    def wavefunction(self, R):
        R = np.asarray(R, dtype=float)
        return self.normalization * np.exp(-0.5 * self.exponent * R * R)

    def density(self, R):
        """|phi(R)|^2."""
        R = np.asarray(R, dtype=float)
        a = self.exponent
        return (a / math.pi) ** 1.5 * np.exp(-a * R * R)


def com_ground(params: SystemParams) -> ComGaussian:
    return ComGaussian(mass=params.total_mass, omega=params.omega)
