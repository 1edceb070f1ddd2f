"""Ohmic-family spectral densities, memory kernel, level shifts, bound states.

J(omega) = gamma_b * omega^s * omega_c^{1-s} * exp(-omega/omega_c),

with coupling gamma_b, cutoff omega_c (units of omega_0) and Ohmicity s.
A bound state of the joint mode-bath spectrum exists iff
gamma_b * omega_c * Gamma(s) > omega_l; its energy solves

    omega_l - int_0^inf J(omega)/(omega - E) domega = E,   E < 0,

and its residue is Z = [1 + int J(omega)/(omega - E)^2 domega]^{-1}.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad as _scipy_quad


def quad(*args, **kwargs):
    """scipy quad with roundoff chatter suppressed (tolerances are pinned
    well below what the callers assert)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        return _scipy_quad(*args, **kwargs)

#: integration window in units of omega_c; exp(-50) makes the tail negligible
TAIL_CUTOFF = 50.0


@dataclass(frozen=True)
class BathSpec:
    """Ohmic-family bath parameters (frequencies in units of omega_0)."""

    gamma_b: float
    omega_c: float
    s: float = 1.0

    def __post_init__(self):
        if self.gamma_b < 0:
            raise ValueError("coupling gamma_b must be >= 0")
        if self.omega_c <= 0:
            raise ValueError("cutoff omega_c must be positive")
        if self.s <= 0:
            raise ValueError("Ohmicity s must be positive")


@dataclass(frozen=True)
class BoundStateResult:
    exists: bool
    energy: float | None = None  # E_b < 0 when exists
    residue: float | None = None  # Z in (0, 1) when exists


def spectral_density(bath: BathSpec, omega):
    """J(omega) for omega >= 0 (vectorized)."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("spectral density defined for omega >= 0")
    with np.errstate(invalid="ignore"):
        j = bath.gamma_b * w**bath.s * bath.omega_c ** (1.0 - bath.s) * np.exp(
            -w / bath.omega_c
        )
    return np.where(w == 0, 0.0, j) if np.ndim(w) else (0.0 if w == 0 else float(j))


def memory_kernel(bath: BathSpec, x):
    """Environmental correlation function f(x) = int_0^inf J(w) e^{-iwx} dw.

    Closed form: gamma_b * Gamma(s+1) * omega_c^2 / (1 + i omega_c x)^{s+1}.
    """
    x = np.asarray(x, dtype=float)
    val = (
        bath.gamma_b
        * math.gamma(bath.s + 1.0)
        * bath.omega_c**2
        / (1.0 + 1j * bath.omega_c * x) ** (bath.s + 1.0)
    )
    return val if np.ndim(x) else complex(val)


def memory_kernel_quadrature(bath: BathSpec, x: float) -> complex:
    """Direct quadrature of the defining integral (verification route)."""
    wc = bath.omega_c

    def jr(u):
        return spectral_density(bath, wc * u) * wc

    if x == 0:
        re, _ = quad(jr, 0, TAIL_CUTOFF, limit=400, epsabs=1e-14, epsrel=1e-12)
        return complex(re, 0.0)
    re, _ = quad(jr, 0, TAIL_CUTOFF, weight="cos", wvar=wc * x,
                 limit=400, epsabs=1e-14, epsrel=1e-12)
    im, _ = quad(jr, 0, TAIL_CUTOFF, weight="sin", wvar=wc * x,
                 limit=400, epsabs=1e-14, epsrel=1e-12)
    return complex(re, -im)


def has_bound_state(bath: BathSpec, omega_l: float) -> bool:
    """Existence condition gamma_b * omega_c * Gamma(s) > omega_l."""
    if omega_l <= 0:
        raise ValueError("mode frequency must be positive")
    return bath.gamma_b * bath.omega_c * math.gamma(bath.s) > omega_l


def level_shift_integral(bath: BathSpec, E: float) -> float:
    """int_0^inf J(omega)/(omega - E) domega for strictly negative E.

    Pole-free for E < 0; evaluated with the substitution omega = omega_c u
    and tail truncation at u = TAIL_CUTOFF.
    """
    if E >= 0:
        raise ValueError("E must be strictly negative (poles on the path otherwise)")
    if bath.gamma_b == 0:
        return 0.0
    wc = bath.omega_c
    e = E / wc

    def integrand(u):
        return u**bath.s * math.exp(-u) / (u - e)

    val, _ = quad(integrand, 0.0, TAIL_CUTOFF, limit=400, epsabs=1e-14,
                  epsrel=1e-11, points=[0.0, 1.0, bath.s + 1.0])
    return bath.gamma_b * wc * val


def _residue_integral(bath: BathSpec, E: float) -> float:
    """int_0^inf J(omega)/(omega - E)^2 domega for E < 0."""
    wc = bath.omega_c
    e = E / wc

    def integrand(u):
        return u**bath.s * math.exp(-u) / (u - e) ** 2

    val, _ = quad(integrand, 0.0, TAIL_CUTOFF, limit=400, epsabs=1e-14,
                  epsrel=1e-11, points=[0.0, 1.0, bath.s + 1.0])
    return bath.gamma_b * val


def bound_state(bath: BathSpec, omega_l: float, tol: float = 1e-11) -> BoundStateResult:
    """Solve the bound-state equation below the continuum.

    y(E) = omega_l - level_shift_integral(E) - E is strictly decreasing on
    (-inf, 0), negative at E -> 0^- exactly when the existence condition
    holds, and positive for E low enough; bisection is then unconditionally
    convergent.
    """
    if omega_l <= 0:
        raise ValueError("mode frequency must be positive")
    if not has_bound_state(bath, omega_l):
        return BoundStateResult(exists=False)

    def y(E):
        return omega_l - level_shift_integral(bath, E) - E

    lo = -bath.omega_c
    while y(lo) <= 0:
        lo *= 2.0
        if lo < -1e3 * bath.omega_c:
            raise RuntimeError("bound-state bracketing failed: malformed bath")
    hi = -1e-14 * bath.omega_c
    eb = 0.5 * (lo + hi)
    for _ in range(200):
        eb = 0.5 * (lo + hi)
        val = y(eb)
        if abs(val) < tol:
            break
        if val > 0:
            lo = eb
        else:
            hi = eb
    z = 1.0 / (1.0 + _residue_integral(bath, eb))
    return BoundStateResult(exists=True, energy=eb, residue=z)


def lamb_shift(bath: BathSpec, omega: float) -> float:
    """Principal value P int_0^inf J(w')/(omega - w') dw' for omega > 0.

    Singularity subtraction over a window symmetric about omega keeps the
    integrand bounded (the analytic log remainder vanishes for a symmetric
    window); the off-window pieces are ordinary integrals.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if bath.gamma_b == 0:
        return 0.0
    wc = bath.omega_c
    top = omega + TAIL_CUTOFF * wc
    d = min(omega, 0.5 * wc)
    a, b = omega - d, omega + d
    j0 = spectral_density(bath, omega)

    def subtracted(w):
        if w == omega:
            # removable singularity: limit is -J'(omega)
            return -(bath.gamma_b * bath.omega_c ** (1 - bath.s)
                     * math.exp(-omega / wc)
                     * (bath.s * omega ** (bath.s - 1) - omega**bath.s / wc))
        return (spectral_density(bath, w) - j0) / (omega - w)

    win, _ = quad(subtracted, a, b, limit=400, epsabs=1e-14, epsrel=1e-11,
                  points=[omega])
    # analytic principal-value remainder; zero for the symmetric window but
    # kept in general form
    win += j0 * math.log(abs((omega - a) / (b - omega)))

    total = win
    if a > 0:
        left, _ = quad(lambda w: spectral_density(bath, w) / (omega - w), 0.0, a,
                       limit=400, epsabs=1e-14, epsrel=1e-11)
        total += left
    right, _ = quad(lambda w: spectral_density(bath, w) / (omega - w), b, top,
                    limit=400, epsabs=1e-14, epsrel=1e-11)
    return total + right


def lamb_shift_reference(bath: BathSpec, omega: float) -> float:
    """Independent principal-value evaluation via the Cauchy-weight rule."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if bath.gamma_b == 0:
        return 0.0
    top = omega + TAIL_CUTOFF * bath.omega_c
    val, _ = quad(lambda w: -spectral_density(bath, w), 0.0, top,
                  weight="cauchy", wvar=omega, limit=400,
                  epsabs=1e-14, epsrel=1e-11)
    # quad(..., weight='cauchy') integrates f(w)/(w - omega)
    return val
