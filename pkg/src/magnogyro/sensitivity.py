"""Time-resolved phase sensitivity of the dissipative gyroscope.

For rotation rate Omega the two encoding modes sit at omega_0 +/- Omega and
acquire amplitude functions u_1, u_2 by the chosen method.  The moment
engine then gives <n_d> and Var(n_d), and

    delta_phi(t) = sqrt(Var n_d) / |d<n_d>/dphi|,
    1/k(t)       = delta_phi(t) / SNL,   SNL = 1/sqrt(N_ref).

The phase derivative defaults to the physical route
d<n_d>/dphi = (2t)^{-1} d<n_d>/dOmega with the u's recomputed at shifted
Omega (five-point stencil, step 1e-6); derivative="phase" instead freezes
the u's and differentiates only the encoded relative phase.  N_ref defaults
to the probe photon number at t=0; photon_reference="instantaneous" uses
the decayed photon number instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from . import dynamics
from .bath import BathSpec, lamb_shift, spectral_density
from .gaussian import evolve_gaussian, nd_from_moments
from .ideal import mean_photons
from .model import ProbeState

DERIVATIVE_MODES = ("omega", "phase")
PHOTON_REFERENCES = ("initial", "instantaneous")

#: five-point central stencil step for the numerical phase derivative
DERIVATIVE_STEP = 1e-6

# five-point central first-derivative weights, denominator 12*step
_STENCIL_OFFSETS = (-2.0, -1.0, 0.0, 1.0, 2.0)
_STENCIL_WEIGHTS = (1.0, -8.0, 0.0, 8.0, -1.0)


@dataclass
class SensitivityCurve:
    """delta_phi and companions sampled on a uniform time grid."""

    time_grid: np.ndarray
    mean_nd: np.ndarray
    var_nd: np.ndarray
    dphi: np.ndarray
    ratio_k_inv: np.ndarray
    method: str
    metadata: dict = field(default_factory=dict)

    def columns(self) -> dict:
        return {
            "t": self.time_grid,
            "mean_nd": self.mean_nd,
            "var_nd": self.var_nd,
            "dphi": self.dphi,
            "ratio_k_inv": self.ratio_k_inv,
            "method": [self.method] * self.time_grid.size,
        }


class SensitivitySolver:
    """Caches the per-frequency amplitude solvers for one configuration."""

    def __init__(self, probe: ProbeState, bath: BathSpec | None, Omega: float,
                 method: str, omega0: float = 1.0,
                 derivative: str = "omega",
                 photon_reference: str = "initial",
                 include_lamb_shift: bool = False,
                 horizon: float = 100.0):
        if method not in dynamics.METHODS:
            raise ValueError(f"unknown method {method!r}")
        if derivative not in DERIVATIVE_MODES:
            raise ValueError(f"unknown derivative mode {derivative!r}")
        if photon_reference not in PHOTON_REFERENCES:
            raise ValueError(f"unknown photon reference {photon_reference!r}")
        if Omega <= 0 or Omega >= omega0:
            raise ValueError("rotation rate must satisfy 0 < Omega < omega0")
        if method != "ideal" and bath is None:
            raise ValueError(f"method {method!r} requires a bath")
        if not probe.has_signal:
            raise ValueError("sensitivity undefined for vacuum amplitudes")
        self.probe = probe
        self.bath = bath
        self.Omega = Omega
        self.omega0 = omega0
        self.method = method
        self.derivative = derivative
        self.photon_reference = photon_reference
        self.include_lamb_shift = include_lamb_shift
        self.horizon = horizon
        self._markov_cache: dict[float, complex] = {}
        self._volterra_splines: dict[float, CubicSpline] = {}
        self._spectral_families: dict[int, dynamics.SpectralFamily] = {}
        self._n_ref = mean_photons(probe, mode="exact")

    # -- amplitude providers -------------------------------------------------

    def _volterra_spline(self, omega: float) -> CubicSpline:
        key = omega
        if key not in self._volterra_splines:
            grid = dynamics.default_grid(omega, self.bath, self.horizon)
            trace = dynamics.u_volterra(self.bath, omega, grid)
            self._volterra_splines[key] = CubicSpline(grid, trace.samples)
        return self._volterra_splines[key]

    def _spectral_fam(self, mode_sign: int, omegas) -> dynamics.SpectralFamily:
        fam = self._spectral_families.get(mode_sign)
        if fam is None or fam.omegas.size != len(omegas) or not np.allclose(
            fam.omegas, omegas, rtol=0, atol=0
        ):
            fam = dynamics.spectral_family(self.bath, omegas)
            self._spectral_families[mode_sign] = fam
        return fam

    def _amplitudes(self, omegas: np.ndarray, t: np.ndarray,
                    mode_sign: int) -> np.ndarray:
        """u values for each frequency in the family, shape (k, nt)."""
        if self.method == "ideal" or (self.bath is not None
                                      and self.bath.gamma_b == 0.0):
            # the decoupled limit is exactly a pure phase for every method
            return np.exp(-1j * omegas[:, None] * t[None, :])
        if self.method == "markov":
            rates = []
            for w in omegas:
                if w not in self._markov_cache:
                    kappa = math.pi * spectral_density(self.bath, float(w))
                    shift = (lamb_shift(self.bath, float(w))
                             if self.include_lamb_shift else 0.0)
                    self._markov_cache[w] = kappa + 1j * (float(w) + shift)
                rates.append(self._markov_cache[w])
            return np.exp(-np.asarray(rates)[:, None] * t[None, :])
        if self.method == "volterra":
            if t.max() > self.horizon * (1 + 1e-12):
                raise ValueError(f"time {t.max():.3g} beyond solver horizon "
                                 f"{self.horizon:.3g}")
            u = np.stack([self._volterra_spline(float(w))(t) for w in omegas])
        else:  # spectral
            u = self._spectral_fam(mode_sign, omegas).evaluate(t)
        # project tiny solver overshoots back onto the contractive disk
        mag = np.abs(u)
        np.divide(u, mag, out=u, where=mag > 1.0)
        return u

    # -- curve evaluation ----------------------------------------------------

    def _mean_var(self, u1, u2):
        state = evolve_gaussian(self.probe, u1, u2)
        return nd_from_moments(state)

    def curve(self, time_grid) -> SensitivityCurve:
        t = np.atleast_1d(np.asarray(time_grid, dtype=float))
        if np.any(t < 0):
            raise ValueError("times must be >= 0")
        d = DERIVATIVE_STEP

        if self.derivative == "omega":
            om1 = np.array([self.omega0 + self.Omega + k * d for k in _STENCIL_OFFSETS])
            om2 = np.array([self.omega0 - self.Omega - k * d for k in _STENCIL_OFFSETS])
            U1 = self._amplitudes(om1, t, +1)
            U2 = self._amplitudes(om2, t, -1)
        else:
            om1 = np.array([self.omega0 + self.Omega])
            om2 = np.array([self.omega0 - self.Omega])
            u1 = self._amplitudes(om1, t, +1)[0]
            u2 = self._amplitudes(om2, t, -1)[0]
            # frozen-u phase stencil: shift only the encoded relative phase
            U1 = np.stack([u1 * np.exp(-1j * k * d / 2) for k in _STENCIL_OFFSETS])
            U2 = np.stack([u2 * np.exp(+1j * k * d / 2) for k in _STENCIL_OFFSETS])

        mean, var = self._mean_var(U1[2], U2[2])
        dmean = np.zeros_like(mean)
        for w, U1k, U2k in zip(_STENCIL_WEIGHTS, U1, U2):
            if w == 0.0:
                continue
            mk, _ = self._mean_var(U1k, U2k)
            dmean += w * mk
        dmean /= 12.0 * d

        if self.derivative == "omega":
            # d<n_d>/dphi = (2t)^{-1} d<n_d>/dOmega; undefined at t = 0
            with np.errstate(divide="ignore", invalid="ignore"):
                slope = np.where(t > 0, dmean / (2.0 * np.where(t > 0, t, 1.0)), 0.0)
        else:
            slope = dmean

        with np.errstate(divide="ignore"):
            dphi = np.where(np.abs(slope) > 0,
                            np.sqrt(var) / np.where(np.abs(slope) > 0,
                                                    np.abs(slope), 1.0),
                            np.inf)

        if self.photon_reference == "initial":
            n_ref = self._n_ref
        else:
            state = evolve_gaussian(self.probe, U1[2], U2[2])
            n_ref = (state.N[0, 0] + state.N[1, 1]).real
        ratio = dphi * np.sqrt(n_ref)

        meta = {
            "method": self.method,
            "derivative": self.derivative,
            "photon_reference": self.photon_reference,
            "alpha_re": self.probe.alpha.real, "alpha_im": self.probe.alpha.imag,
            "beta_re": self.probe.beta.real, "beta_im": self.probe.beta.imag,
            "G": self.probe.G,
            "Omega": self.Omega, "omega0": self.omega0,
        }
        if self.bath is not None:
            meta.update(gamma_b=self.bath.gamma_b, omega_c=self.bath.omega_c,
                        s=self.bath.s)
        return SensitivityCurve(t, np.asarray(mean), np.asarray(var),
                                dphi, ratio, self.method, meta)

    def delta_phi_t(self, t: float) -> float:
        if t < 0:
            raise ValueError("time must be >= 0")
        if t == 0:
            return math.inf
        return float(self.curve(np.array([t])).dphi[0])

    def ratio_t(self, t: float) -> float:
        if t < 0:
            raise ValueError("time must be >= 0")
        if t == 0:
            return math.inf
        return float(self.curve(np.array([t])).ratio_k_inv[0])


_SOLVERS: dict[tuple, SensitivitySolver] = {}


def _solver(probe, bath, Omega, method, **opts) -> SensitivitySolver:
    key = (probe, bath, Omega, method, tuple(sorted(opts.items())))
    if key not in _SOLVERS:
        _SOLVERS[key] = SensitivitySolver(probe, bath, Omega, method, **opts)
    return _SOLVERS[key]


def delta_phi_t(probe: ProbeState, bath: BathSpec | None, Omega: float,
                t: float, method: str, **opts) -> float:
    """Phase uncertainty at one time; +inf at t = 0 (no accumulated phase)."""
    return _solver(probe, bath, Omega, method, **opts).delta_phi_t(t)


def ratio_t(probe: ProbeState, bath: BathSpec | None, Omega: float,
            t: float, method: str, **opts) -> float:
    """delta_phi relative to the shot-noise limit of the reference photons."""
    return _solver(probe, bath, Omega, method, **opts).ratio_t(t)


def local_minima(curve: SensitivityCurve) -> np.ndarray:
    """Chronological (t, delta_phi) pairs at the curve's local minima.

    Interior samples smaller than both neighbors, refined by parabolic
    interpolation through the 3-point stencil.  Empty for monotone curves.
    """
    t = curve.time_grid
    y = curve.dphi
    out = []
    for i in range(1, t.size - 1):
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        if not (np.isfinite(y0) and np.isfinite(y1) and np.isfinite(y2)):
            continue
        if y1 < y0 and y1 < y2:
            denom = y0 - 2 * y1 + y2
            if denom > 0:
                shift = 0.5 * (y0 - y2) / denom
                h = t[i + 1] - t[i]
                t_star = t[i] + shift * h
                y_star = y1 - 0.125 * (y0 - y2) ** 2 / denom
            else:
                t_star, y_star = t[i], y1
            out.append((t_star, y_star))
    return np.array(out).reshape(-1, 2)


def refine_minimum(solver: SensitivitySolver, t_lo: float, t_hi: float,
                   xatol: float = 1e-10) -> tuple[float, float]:
    """Polish one bracketed minimum of delta_phi(t) to high accuracy."""
    res = minimize_scalar(solver.delta_phi_t, bounds=(t_lo, t_hi),
                          method="bounded", options={"xatol": xatol})
    return float(res.x), float(res.fun)
