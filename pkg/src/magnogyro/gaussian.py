"""Gaussian-moment engine for the two-mode probe.

Tracks first moments d_i = <a_i>, the normal-ordered second moments
N_ij = <a_i^dag a_j> and M_ij = <a_i a_j> of the two-mode state, and pushes
them through linear mode maps a_i -> sum_j T_ij a_j.  Passive unitaries
(beam splitters, phase rotations) and the zero-temperature decay map
T = diag(u_1, u_2) with |u_l| <= 1 are both of this form.  Fourth moments
of the intensity difference are obtained by Wick factorization of the
(Gaussian) fluctuation operators, so every expectation here is exact.

All entries may be numpy arrays, in which case the whole pipeline is
evaluated elementwise (used by the time sweeps).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ProbeState

# Beam splitter conventions: the mode matrix of exp(i*theta*(a^dag m + a m^dag))
# acting on the state is [[cos t, i sin t], [i sin t, cos t]].  The splitter
# pair below sandwiches the encoding stage such that, for lossless evolution
# u_l = exp(-i(omega0 +/- Omega) t), the composite map reduces exactly to the
# rotation scattering matrix [[cos(phi/2), sin(phi/2)], [-sin(phi/2), cos(phi/2)]]
# with phi = 2 Omega t.
_INV_SQRT2 = 1.0 / np.sqrt(2.0)
BS_IN = np.array([[1.0, 1.0j], [1.0j, 1.0]]) * _INV_SQRT2
BS_OUT = np.array([[1.0, -1.0j], [-1.0j, 1.0]]) * _INV_SQRT2


@dataclass
class GaussianState:
    """First and second moments of the two-mode Gaussian state.

    d[i]     = <a_i>
    N[i, j]  = <a_i^dag a_j>   (Hermitian)
    M[i, j]  = <a_i a_j>       (symmetric)
    """

    d: np.ndarray  # shape (2, ...)
    N: np.ndarray  # shape (2, 2, ...)
    M: np.ndarray  # shape (2, 2, ...)

    @property
    def n11(self):
        return self.N[0, 0].real

    @property
    def n22(self):
        return self.N[1, 1].real

    def check_physical(self, atol: float = 1e-9) -> None:
        if np.any(self.n11 < -atol) or np.any(self.n22 < -atol):
            raise ValueError("negative mode occupation")
        # Cauchy-Schwarz-type bound on <a m> for physical states
        bound = (self.n11 + 1.0) * (self.n22 + 1.0)
        if np.any(np.abs(self.M[0, 1]) ** 2 > bound * (1.0 + 1e-9) + atol):
            raise ValueError("second moments violate the Cauchy-Schwarz bound")


def squeezed_coherent_moments(probe: ProbeState) -> GaussianState:
    """Moments of S(G)|alpha>|beta> with S(G) = exp[G(a m - a^dag m^dag)]."""
    a, b, G = probe.alpha, probe.beta, probe.G
    ch, sh = np.cosh(G), np.sinh(G)
    ab_conj = np.conj(a)
    bb_conj = np.conj(b)

    d = np.array([a * ch - bb_conj * sh, b * ch - ab_conj * sh])

    cross = (ab_conj * bb_conj + a * b) * ch * sh
    N = np.empty((2, 2), dtype=complex)
    N[0, 0] = abs(a) ** 2 * ch**2 - cross + (abs(b) ** 2 + 1) * sh**2
    N[1, 1] = abs(b) ** 2 * ch**2 - cross + (abs(a) ** 2 + 1) * sh**2
    N[0, 1] = ab_conj * b * (ch**2 + sh**2) - (ab_conj**2 + b**2) * ch * sh
    N[1, 0] = np.conj(N[0, 1])

    M = np.empty((2, 2), dtype=complex)
    M[0, 0] = a**2 * ch**2 - 2 * a * bb_conj * ch * sh + bb_conj**2 * sh**2
    M[1, 1] = b**2 * ch**2 - 2 * ab_conj * b * ch * sh + ab_conj**2 * sh**2
    M[0, 1] = a * b * ch**2 + ab_conj * bb_conj * sh**2 - ch * sh * (
        abs(a) ** 2 + abs(b) ** 2 + 1
    )
    M[1, 0] = M[0, 1]
    return GaussianState(d=d, N=N, M=M)


def apply_linear(state: GaussianState, T: np.ndarray) -> GaussianState:
    """Push moments through the linear mode map a_i -> sum_j T_ij a_j.

    T may carry trailing broadcast axes (shape (2, 2, ...)); the moments are
    then evaluated elementwise over those axes.  Valid for passive unitaries
    and for the contractive vacuum-decay map diag(u_1, u_2).
    """
    Tc = np.conj(T)
    d = np.einsum("ij...,j...->i...", T, state.d)
    N = np.einsum("ik...,kl...,jl...->ij...", Tc, state.N, T)
    M = np.einsum("ik...,kl...,jl...->ij...", T, state.M, T)
    return GaussianState(d=d, N=N, M=M)


def decay_map(u1, u2) -> np.ndarray:
    """Mode matrix of the zero-temperature amplitude-decay channel."""
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    zero = np.zeros(np.broadcast_shapes(u1.shape, u2.shape), dtype=complex)
    return np.array([[u1 + zero, zero], [zero, u2 + zero]])


def evolve_gaussian(probe: ProbeState, u1: complex, u2: complex) -> GaussianState:
    """Moments after the input splitter and the dissipative encoding stage.

    The probe moments are passed through the first 50-50 beam splitter of
    the interferometer decomposition and then through the vacuum-bath decay
    map d_l -> u_l d_l (normal-ordered second moments scale accordingly;
    no thermal terms at zero temperature).
    """
    mod1 = np.max(np.abs(np.asarray(u1)))
    mod2 = np.max(np.abs(np.asarray(u2)))
    if mod1 > 1 + 1e-6 or mod2 > 1 + 1e-6:
        raise ValueError("non-contractive amplitude map: |u_l| must be <= 1")
    state = squeezed_coherent_moments(probe)
    state = apply_linear(state, BS_IN)
    return apply_linear(state, decay_map(u1, u2))


def number_covariance(state: GaussianState, i: int, j: int):
    """Cov(n_i, n_j) of a displaced Gaussian state via Wick factorization."""
    d = state.d
    dc = np.conj(d)
    # fluctuation moments: nu_ij = <da_i^dag da_j>, mu_ij = <da_i da_j>
    nu = state.N - dc[:, None] * d[None, :]
    mu = state.M - d[:, None] * d[None, :]
    delta = 1.0 if i == j else 0.0
    cov = (
        dc[i] * dc[j] * mu[i, j]
        + d[i] * d[j] * np.conj(mu[i, j])
        + dc[i] * d[j] * (nu[j, i] + delta)
        + d[i] * dc[j] * nu[i, j]
        + np.abs(mu[i, j]) ** 2
        + nu[i, j] * nu[j, i]
        + delta * nu[i, i]
    )
    return cov.real


def nd_mean_var(state: GaussianState):
    """Mean and variance of n_d = a^dag a - m^dag m in the given state."""
    mean = (state.N[0, 0] - state.N[1, 1]).real
    var = (
        number_covariance(state, 0, 0)
        + number_covariance(state, 1, 1)
        - 2.0 * number_covariance(state, 0, 1)
    )
    neg = np.min(var) if np.ndim(var) else var
    if neg < -1e-10:
        raise ValueError(f"negative variance from moment engine: {neg}")
    var = np.maximum(var, 0.0)
    return mean, var


def nd_from_moments(state: GaussianState):
    """Apply the output 50-50 splitter, then measure the intensity difference.

    Returns (mean, variance) of n_d = b_1^dag b_1 - b_2^dag b_2.
    """
    out = apply_linear(state, BS_OUT)
    return nd_mean_var(out)
