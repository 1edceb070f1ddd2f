"""Lossless interferometer statistics and the three closed-form case analyses.

The intensity difference behind the rotation scattering matrix is

    n_d = cos(phi) (a^dag a - m^dag m) + sin(phi) (a^dag m + a m^dag),

evaluated in the two-mode squeezed coherent state S(G)|alpha>|beta>.  The
variance is available in two variants: the transcription of the published
error-propagation coefficients ("printed") and the exact Wick-factorized
form from the Gaussian moment engine ("wick", default).  The truncated-Fock
brute force in fock.py is the independent arbiter between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import apply_linear, nd_mean_var, squeezed_coherent_moments
from .model import ProbeState

VAR_ND_VARIANTS = ("wick", "printed")


@dataclass(frozen=True)
class CaseIIIProfile:
    """Case-III probe family: |beta|/|alpha| = R at common coherent phase phi."""

    R: float
    G: float
    phi: float = 0.0

    def __post_init__(self):
        if self.R < 0:
            raise ValueError("amplitude ratio R must be >= 0")
        if self.G < 0:
            raise ValueError("squeeze parameter G must be >= 0")


def scattering_matrix(phi) -> np.ndarray:
    """Rotation scattering matrix mapping (a, m) to the output modes."""
    half = np.asarray(phi) / 2.0
    c, s = np.cos(half), np.sin(half)
    return np.array([[c + 0j, s + 0j], [-s + 0j, c + 0j]])


def mean_nd(probe: ProbeState, phi):
    """<n_d> = cos(phi)(|a|^2-|b|^2) + sin(phi)[cosh(2G) 2Re(a* b)
    - sinh(2G) Re(a^2 + b^2)]."""
    a, b, G = probe.alpha, probe.beta, probe.G
    cross = np.cosh(2 * G) * 2 * (np.conj(a) * b).real - np.sinh(2 * G) * (
        a**2 + b**2
    ).real
    return np.cos(phi) * (abs(a) ** 2 - abs(b) ** 2) + np.sin(phi) * cross


def _printed_var_nd(probe: ProbeState, phi):
    """Literal transcription of the published A/B error-propagation terms."""
    a, b, G = probe.alpha, probe.beta, probe.G
    sh, ch = math.sinh(G), math.cosh(G)
    na, nb = abs(a) ** 2, abs(b) ** 2
    A = (a**2 - b**2 + np.conj(a) ** 2 - np.conj(b) ** 2).real
    B = (
        (sh**4 + ch**4) * (na + nb)
        - math.sinh(4 * G) * (np.conj(a) * np.conj(b) + a * b).real
        + sh**2 * ch**2 * (6 * na + 6 * nb + 4)
    )
    return np.cos(phi) ** 2 * (na + nb) + A * np.sin(2 * phi) + B * np.sin(phi) ** 2


def _wick_var_nd(probe: ProbeState, phi):
    state = squeezed_coherent_moments(probe)
    out = apply_linear(state, scattering_matrix(phi))
    _, var = nd_mean_var(out)
    return var


def var_nd(probe: ProbeState, phi, variant: str = "wick"):
    """Variance of the intensity difference operator; >= 0.

    variant="wick" uses the exact Gaussian factorization; variant="printed"
    keeps the published coefficient transcription for comparison.
    """
    if variant not in VAR_ND_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    v = _wick_var_nd(probe, phi) if variant == "wick" else _printed_var_nd(probe, phi)
    vmin = np.min(v) if np.ndim(v) else v
    if vmin < -1e-12:
        raise ValueError(f"negative variance {vmin}: coefficient transcription bug")
    return np.maximum(v, 0.0)


def dmean_nd_dphi(probe: ProbeState, phi):
    """Closed-form derivative of <n_d> with respect to the encoding phase."""
    a, b, G = probe.alpha, probe.beta, probe.G
    C = np.cosh(2 * G) * 2 * (np.conj(a) * b).real - np.sinh(2 * G) * (
        a**2 + b**2
    ).real
    return -np.sin(phi) * (abs(a) ** 2 - abs(b) ** 2) + C * np.cos(phi)


def delta_phi(probe: ProbeState, phi, variant: str = "wick"):
    """Error-propagation sensitivity sqrt(Var n_d)/|d<n_d>/dphi|.

    Returns +inf at signal-free operating points (vanishing derivative), so
    sweeps plot through the poles instead of failing.
    """
    if not probe.has_signal:
        raise ValueError("sensitivity undefined for vacuum amplitudes")
    num = np.sqrt(var_nd(probe, phi, variant=variant))
    den = np.abs(dmean_nd_dphi(probe, phi))
    with np.errstate(divide="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)


def mean_photons(probe: ProbeState, mode: str = "exact"):
    """Total photon number of the probe.

    exact:       (|a|^2+|b|^2) cosh 2G - sinh 2G 2Re(ab) + 2 sinh^2 G
    approximate: drops the 2 sinh^2 G term (valid for |a|^2, |b|^2 >> sinh^2 G).
    """
    if mode not in ("exact", "approximate"):
        raise ValueError("mode must be 'exact' or 'approximate'")
    a, b, G = probe.alpha, probe.beta, probe.G
    n = (abs(a) ** 2 + abs(b) ** 2) * math.cosh(2 * G) - math.sinh(2 * G) * 2 * (
        a * b
    ).real
    if mode == "exact":
        n += 2 * math.sinh(G) ** 2
    return n


def snl(N) -> float:
    """Shot-noise limit 1/sqrt(N)."""
    if np.any(np.asarray(N) <= 0):
        raise ValueError("photon number must be positive")
    return 1.0 / np.sqrt(N)


def ratio_case1(G: float, phi):
    """Case I (alpha = beta = |alpha| e^{i phi}):
    1/k = [cosh 2G - sinh 2G cos 2phi]^{-1/2}."""
    return 1.0 / np.sqrt(np.cosh(2 * G) - np.sinh(2 * G) * np.cos(2 * np.asarray(phi)))


def ratio_case2(G: float, phi1, phi2):
    """Case II (|alpha| = |beta|, distinct phases):
    1/k = 1/(|cos(dphi)| [cosh 2G - sinh 2G cos(phi1+phi2)]^{1/2});
    +inf at cos(dphi) = 0 (phase information fully lost)."""
    dphi = np.asarray(phi1) - np.asarray(phi2)
    phi_p = np.asarray(phi1) + np.asarray(phi2)
    root = np.sqrt(np.cosh(2 * G) - np.sinh(2 * G) * np.cos(phi_p))
    den = np.abs(np.cos(dphi)) * root
    with np.errstate(divide="ignore"):
        return np.where(den > 0, 1.0 / np.where(den > 0, den, 1.0), np.inf)


def ratio_case3(G: float, R, phi):
    """Case III (|beta|/|alpha| = R, common phase):
    1/k = (1+R^2)^{1/2}[(1+R^2) cosh 2G - 2R sinh 2G cos 2phi]^{1/2}
          / |2R cosh 2G - sinh 2G (1+R^2) cos 2phi|."""
    R = np.asarray(R, dtype=float)
    c2, s2 = np.cosh(2 * G), np.sinh(2 * G)
    cos2phi = np.cos(2 * np.asarray(phi))
    num = np.sqrt(1 + R**2) * np.sqrt((1 + R**2) * c2 - 2 * R * s2 * cos2phi)
    den = np.abs(2 * R * c2 - s2 * (1 + R**2) * cos2phi)
    with np.errstate(divide="ignore"):
        return np.where(den > 0, num / np.where(den > 0, den, 1.0), np.inf)


def f_of_R(R, G: float):
    """Case-III profile at the optimal phase phi = pi/2."""
    return ratio_case3(G, R, np.pi / 2)


def h_of_G(G):
    """Common R->0 / R->infinity asymptote sqrt(cosh 2G)/sinh 2G."""
    G = np.asarray(G, dtype=float)
    return np.sqrt(np.cosh(2 * G)) / np.sinh(2 * G)


def h_crossing() -> float:
    """The squeeze value G_0 with h(G_0) = 1, from the closed form
    G_0 = ln[(1 + sqrt5 + sqrt(2 + 2 sqrt5))/2] / 2."""
    s5 = math.sqrt(5.0)
    return 0.5 * math.log((1.0 + s5 + math.sqrt(2.0 + 2.0 * s5)) / 2.0)


def g_threshold(R: float, tol: float = 1e-10) -> float:
    """Smallest squeeze G_th with f(R; G) < 1 for all G > G_th.

    For R = 1, f(1; G) = e^{-G} < 1 for every G > 0, so the threshold is 0.
    Otherwise f(R; 0) = (1+R^2)/(2R) > 1 and f decreases through 1 at a
    unique root, located by geometric bracket expansion plus bisection.
    """
    if R < 0:
        raise ValueError("R must be >= 0")
    if R == 1.0:
        return 0.0

    def g(G):
        return float(f_of_R(R, G)) - 1.0

    lo = 0.0
    hi = 0.01
    while g(hi) > 0:
        hi *= 2.0
        if hi > 50.0:
            raise RuntimeError(f"no sign change for f(R;G) - 1 with R={R}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)
