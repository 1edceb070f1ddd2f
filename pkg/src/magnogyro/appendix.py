"""Closed-form dissipative intensity-difference mean for equal amplitudes.

The influence-functional propagator of the two damped encoding modes is
Gaussian, so <n_d> behind the output beam splitter admits a closed form in
the amplitude functions u_1, u_2.  Three variants are provided:

corrected (default)
    Independently re-derived closed form.  The mode transfer through
    splitter - decay - splitter is b = T (a, m) with
    T = [[(u1+u2)/2, i(u1-u2)/2], [-i(u1-u2)/2, (u1+u2)/2]], and with the
    normal-ordered probe moments this collapses to

        <n_d> = Re(u1 conj(u2)) (|alpha|^2 - |beta|^2)
                - 2 Im(u1 conj(u2)) [ Re(conj(alpha) beta) cosh 2G
                                      - Re(alpha^2 + beta^2) sinh 2G / 2 ].

    For pure phases u_l = exp(-i theta_l) this reduces to the lossless mean
    at encoding phase theta_1 - theta_2, as it must.

printed
    The published per-mode expression with its two index repairs applied
    (the duplicated l=2 square-root factor read as l=1 / l=2, and the
    exponent denominator (p_2-2)^2 read as (p_2-1)^2).  Verification
    against the moment engine and the truncated-Fock damping channel shows
    this expression still disagrees at order unity: its printed initial
    state kernel is not holomorphic in the coherent-state labels, so the
    defects are not recoverable by local index repairs.  Kept only so the
    discrepancy can be measured and recorded.

printed-literal
    The published expression with no repairs at all.

The Gaussian moment engine (gaussian.evolve_gaussian + nd_from_moments),
itself validated against the independent truncated-Fock Kraus channel
(fock.damped_oracle), is the arbiter for all variants.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .ideal import mean_nd
from .model import ProbeState

ND_APPENDIX_VARIANTS = ("corrected", "printed", "printed-literal")

#: |1 - |u|^2| below this is treated as the lossless (unit-modulus) limit
_UNIT_MODULUS_TOL = 1e-8


def _corrected(probe: ProbeState, u1: complex, u2: complex) -> float:
    a, b, G = probe.alpha, probe.beta, probe.G
    w = u1 * np.conj(u2)
    cross = (np.conj(a) * b).real * math.cosh(2 * G) - 0.5 * (
        a**2 + b**2
    ).real * math.sinh(2 * G)
    return w.real * (abs(a) ** 2 - abs(b) ** 2) - 2.0 * w.imag * cross


def _mode_terms(u: complex, a_tilde: complex, c: complex, th: float):
    """Per-mode helper quantities (A, m, p, q, n, e) of the printed form."""
    w = abs(u) ** 2
    loss = 1.0 - w
    A = 1.0 - loss**2 * th**2
    if A <= 0:
        raise ValueError("unphysical amplitude: A_l must be positive")
    if A == 1.0:
        raise ValueError("printed form degenerates at |u_l| = 1 "
                         "(removable singularity); use the corrected variant")
    m = -1j * u**2 * th / (2 * A)
    p = w / (1.0 - A)
    c_t = c * loss - a_tilde / 2.0
    ub = np.conj(u)

    q = ((th**2 / 2) * loss * a_tilde * ub + 1j * th * c_t * ub - c * ub) / A
    n = (
        (1j * th * u * loss * c
         - 1j * th**3 * loss**2 * a_tilde * u / 2
         + th**2 * loss * u * c_t) / A
        - 1j * th / 2 * u * a_tilde
        + c * u
    )
    e = (
        ((th**2 / 2) * loss * a_tilde * c_t
         + 1j * th / 2 * c_t**2
         + 1j * th * c * loss * a_tilde / 2
         - 1j * th / 2 * loss**2 * c**2
         - 1j * th**3 / 8 * loss**2 * a_tilde**2
         - c * c_t) / A
        + c * a_tilde / 2
        - 1j * th * a_tilde**2 / 8
    )
    return A, m, p, q, n, e


def _printed(probe: ProbeState, u1: complex, u2: complex, literal: bool) -> complex:
    G = probe.G
    th = math.tanh(G)
    if th == 0:
        raise ValueError("printed form degenerates at G = 0 with loss; "
                         "use the moment engine instead")
    a_tilde = probe.alpha * (math.cosh(G) - math.sinh(G))
    c = (a_tilde / 2 - 1j * a_tilde * th) ** 2

    A1, m1, p1, q1, n1, e1 = _mode_terms(u1, a_tilde, c, th)
    A2, m2, p2, q2, n2, e2 = _mode_terms(u2, a_tilde, c, th)
    d1 = (p1 - 1) ** 2 - 4 * abs(m1) ** 2
    d2 = (p2 - 1) ** 2 - 4 * abs(m2) ** 2
    x = 1.0 / (math.sqrt(A1 * A2) * math.cosh(G) ** 2)

    b1 = (
        ((n1 + q1) * (2 * np.conj(m1) + 1 - p1) + (n1 - q1) * (2 * np.conj(m1) - 1 + p1))
        * ((n2 + q2) * (2 * m2 + 1 - p2) - (n2 - q2) * (2 * m2 - 1 + p2))
    ) / (4 * d1 * d2)
    b2 = (
        ((n1 + q1) * (2 * m1 + 1 - p1) + (q1 - n1) * (2 * m1 - 1 + p1))
        * ((n2 + q2) * (2 * np.conj(m2) + 1 - p2) - (q2 - n2) * (2 * np.conj(m2) - 1 + p2))
    ) / (4 * d1 * d2)

    exp2_den = ((p2 - 2) ** 2 - 4 * abs(m2) ** 2) if literal else d2
    exponent = (
        (m1 * q1**2 + np.conj(m1) * n1**2 + n1 * q1) / d1
        + (m2 * q2**2 + np.conj(m2) * n2**2 + n2 * q2) / exp2_den
        + e1 + e2
    )
    den1 = d2 if literal else d1
    return 1j * x * (b1 - b2) * cmath.exp(exponent) / (cmath.sqrt(den1) * cmath.sqrt(d2))


def nd_appendix(probe: ProbeState, u1: complex, u2: complex,
                variant: str = "corrected") -> float:
    """Closed-form <n_d> for an alpha = beta probe under amplitude damping.

    Requires |u_l| <= 1.  Unit-modulus amplitudes route through the exact
    lossless reduction.  The result must be real; an imaginary residue
    above 1e-8 is reported as a transcription fault (which the printed
    variants exhibit; see the module docstring).
    """
    if variant not in ND_APPENDIX_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if probe.alpha != probe.beta:
        raise ValueError("closed form requires alpha = beta")
    u1, u2 = complex(u1), complex(u2)
    if abs(u1) > 1 + 1e-9 or abs(u2) > 1 + 1e-9:
        raise ValueError("amplitude functions must satisfy |u_l| <= 1")

    if abs(1 - abs(u1) ** 2) < _UNIT_MODULUS_TOL and abs(1 - abs(u2) ** 2) < _UNIT_MODULUS_TOL:
        # lossless limit: pure phases reduce to the rotation scattering
        # matrix with encoding phase arg(u2 u1*)
        phi = cmath.phase(u2 * np.conj(u1))
        return float(mean_nd(probe, phi))

    if variant == "corrected":
        return _corrected(probe, u1, u2)

    value = _printed(probe, u1, u2, literal=(variant == "printed-literal"))
    if abs(value.imag) > 1e-8 * max(1.0, abs(value.real)):
        raise ArithmeticError(
            f"non-real expectation value {value}: formula-transcription fault"
        )
    return value.real
