"""Truncated-Fock brute-force oracle for the lossless statistics.

Builds S(G)|alpha>|beta> in a number basis truncated at n_max per mode,
applies the rotation scattering matrix, and takes exact matrix-element
expectations of the intensity difference.  Entirely independent of the
closed forms and of the Gaussian moment engine; keep it that way.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.linalg import expm

from .model import ProbeState


class TruncationWarning(UserWarning):
    pass


def _destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def _coherent_vector(alpha: complex, dim: int) -> np.ndarray:
    n = np.arange(dim)
    logfact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mod = n * np.log(abs(alpha)) - 0.5 * logfact if alpha != 0 else None
    if alpha == 0:
        vec = np.zeros(dim, dtype=complex)
        vec[0] = 1.0
        return vec
    phase = np.exp(1j * n * np.angle(alpha))
    vec = np.exp(-0.5 * abs(alpha) ** 2 + log_mod) * phase
    return vec


def _damping_kraus(u: complex, dim: int) -> list[np.ndarray]:
    """Kraus operators of the zero-temperature channel with <a> -> u <a>.

    Decomposed as a number-phase rotation by arg(u) followed by amplitude
    damping with transmissivity |u|^2:
    K_k = sum_n sqrt(C(n, k) eta^{n-k} (1 - eta)^k) |n-k><n|.
    """
    eta = abs(u) ** 2
    if eta > 1 + 1e-9:
        raise ValueError("damping requires |u| <= 1")
    phase = np.diag(np.exp(1j * np.angle(u) * np.arange(dim)))
    n = np.arange(dim)
    # log-binomial for numerical stability at large n
    logfact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim)))))
    ops = []
    for k in range(dim):
        K = np.zeros((dim, dim), dtype=complex)
        for m in range(k, dim):
            logc = logfact[m] - logfact[k] - logfact[m - k]
            if eta == 0:
                amp = 1.0 if m == k else 0.0
            elif eta == 1:
                amp = 1.0 if k == 0 else 0.0
            else:
                amp = math.exp(
                    0.5 * (logc + (m - k) * math.log(eta) + k * math.log1p(-eta))
                )
            K[m - k, m] = amp
        ops.append(K @ phase)
    return ops


def damped_oracle(probe: ProbeState, u1: complex, u2: complex, n_max: int = 15):
    """Brute-force (mean, variance) of n_d with per-mode amplitude decay.

    Builds the probe density matrix, applies the input beam splitter, the
    two single-mode decay channels with amplitude maps u_1, u_2, and the
    output beam splitter, all in the truncated number basis.  Independent
    of the Gaussian moment engine and of the closed forms.
    """
    dim = n_max + 1
    a = np.kron(_destroy(dim), np.eye(dim))
    m = np.kron(np.eye(dim), _destroy(dim))
    mixer = a.conj().T @ m + a @ m.conj().T

    psi = np.kron(
        _coherent_vector(probe.alpha, dim), _coherent_vector(probe.beta, dim)
    )
    if probe.G != 0:
        psi = expm(probe.G * (a @ m - a.conj().T @ m.conj().T)) @ psi
    psi = expm(1j * (math.pi / 4) * mixer) @ psi

    rho = np.outer(psi, psi.conj())
    eye = np.eye(dim)
    for u, side in ((u1, 0), (u2, 1)):
        nxt = np.zeros_like(rho)
        for K in _damping_kraus(u, dim):
            full = np.kron(K, eye) if side == 0 else np.kron(eye, K)
            nxt += full @ rho @ full.conj().T
        rho = nxt

    v_out = expm(-1j * (math.pi / 4) * mixer)
    rho = v_out @ rho @ v_out.conj().T

    tr = np.trace(rho).real
    if abs(1.0 - tr) > 1e-8:
        warnings.warn(
            f"truncated-space trace deficit {1.0 - tr:.2e}; increase n_max",
            TruncationWarning,
        )
    nd = a.conj().T @ a - m.conj().T @ m
    mean = (np.trace(nd @ rho) / tr).real
    second = (np.trace(nd @ nd @ rho) / tr).real
    return mean, second - mean**2


def fock_oracle(probe: ProbeState, phi: float, n_max: int = 25):
    """Exact truncated-space (mean, variance) of n_d.

    Recommended |alpha|, |beta| <= 1 and G <= 0.5 so that the truncation
    error at n_max >= 25 stays below 1e-8.  Emits a TruncationWarning when
    the population leaked beyond the cutoff exceeds 1e-10.
    """
    dim = n_max + 1
    a = np.kron(_destroy(dim), np.eye(dim))
    m = np.kron(np.eye(dim), _destroy(dim))
    G = probe.G

    psi = np.kron(
        _coherent_vector(probe.alpha, dim), _coherent_vector(probe.beta, dim)
    )
    if G != 0:
        generator = G * (a @ m - a.conj().T @ m.conj().T)
        psi = expm(generator) @ psi

    norm = np.vdot(psi, psi).real
    # population in the top Fock layer of either mode flags truncation leakage
    occ = np.abs(psi.reshape(dim, dim)) ** 2
    edge = occ[-1, :].sum() + occ[:, -1].sum()
    if 1.0 - norm > 1e-10 or edge > 1e-10 * norm:
        warnings.warn(
            f"truncated-space population leakage {max(1.0 - norm, edge):.2e}; "
            "increase n_max",
            TruncationWarning,
        )

    nd = (
        math.cos(phi) * (a.conj().T @ a - m.conj().T @ m)
        + math.sin(phi) * (a.conj().T @ m + a @ m.conj().T)
    )
    mean = np.vdot(psi, nd @ psi).real / norm
    second = np.vdot(psi, nd @ (nd @ psi)).real / norm
    return mean, second - mean**2
