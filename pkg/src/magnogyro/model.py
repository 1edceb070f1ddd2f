"""Shared physical types and rotation-to-phase encoding helpers.

Unit conventions: all internal frequencies are expressed in units of the
base mode frequency omega_0 (so omega_0 = 1), and times in units of
1/omega_0.  SI quantities appear only in the Fizeau / Sagnac helpers,
which take meters and rad/s and use the exact vacuum light speed.
"""

from __future__ import annotations

from dataclasses import dataclass

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact


@dataclass(frozen=True)
class RotorGeometry:
    """Geometry of the spinning resonator / WGM cavity.

    A single radius is stored; callers that want physically different radii
    for the Fizeau and Sagnac expressions construct two geometries.
    """

    radius: float  # meters
    wavelength: float  # meters
    refractive_index: float = 1.0
    dispersion: float = 0.0  # dn/dlambda, per meter
    base_frequency: float = 1.0  # omega_0, rad/s

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.refractive_index < 1:
            raise ValueError("refractive index must be >= 1")
        if self.base_frequency <= 0:
            raise ValueError("base frequency must be positive")


@dataclass(frozen=True)
class ProbeState:
    """Two-mode squeezed coherent input S(G)|alpha>|beta>.

    The squeeze parameter G is real and non-negative; amplitudes are stored
    in Cartesian (complex) form so that phases are derived quantities.
    """

    alpha: complex
    beta: complex
    G: float = 0.0

    def __post_init__(self):
        if isinstance(self.G, complex):
            raise TypeError("squeeze parameter G must be real")
        if self.G < 0:
            raise ValueError("squeeze parameter G must be >= 0")

    @property
    def has_signal(self) -> bool:
        """|alpha|^2 + |beta|^2 > 0, required for any sensitivity evaluation."""
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2 > 0


@dataclass(frozen=True)
class FrequencyLayout:
    """Encoding-mode frequencies omega_0 +/- Omega (units of omega_0)."""

    Omega: float
    omega0: float = 1.0

    def __post_init__(self):
        if self.Omega < 0:
            raise ValueError("Omega must be >= 0 (sign lives at the Fizeau level)")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")

    @property
    def omega1(self) -> float:
        return self.omega0 + self.Omega

    @property
    def omega2(self) -> float:
        return self.omega0 - self.Omega


def fizeau_shift(geom: RotorGeometry, Omega: float, include_dispersion: bool = False) -> float:
    """Rotation-induced frequency shift of the counter-propagating modes.

    Delta_F = Omega * n * r * omega_0 / c * (1 - 1/n^2 - (lambda/n) dn/dlambda),
    with the dispersion term dropped by default (it is usually negligible).
    The sign follows the sign of Omega (clockwise positive).
    """
    n = geom.refractive_index
    factor = 1.0 - 1.0 / n**2
    if include_dispersion:
        factor -= (geom.wavelength / n) * geom.dispersion
    return Omega * n * geom.radius * geom.base_frequency / SPEED_OF_LIGHT * factor


def sagnac_phase(radius: float, wavelength: float, Omega: float) -> float:
    """Sagnac phase shift phi = 4 pi R^2 Omega / (lambda c)."""
    if radius <= 0 or wavelength <= 0:
        raise ValueError("radius and wavelength must be positive")
    import math

    return 4.0 * math.pi * radius**2 * Omega / (wavelength * SPEED_OF_LIGHT)


def effective_squeeze(g0: float, pump_amplitude: float, tau: float) -> float:
    """Magnitude of the effective squeeze parameter, G = g0 * |alpha_2| * tau.

    Only the magnitude relation is exposed; the oscillating phase of the
    parametric coupling is not modeled.
    """
    if g0 < 0 or pump_amplitude < 0 or tau < 0:
        raise ValueError("all inputs must be >= 0")
    return g0 * pump_amplitude * tau


def detuning(omega_j: float, delta_f: float, omega_laser: float, sign: int = +1) -> float:
    """Cavity-mode detuning Delta_j = omega_j + sign * Delta_F - omega_laser."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return omega_j + sign * delta_f - omega_laser
