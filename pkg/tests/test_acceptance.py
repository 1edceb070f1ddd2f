"""End-to-end acceptance checks for the primary component.

Each test covers one numbered criterion; `pytest -v` therefore yields one
pass/fail line per criterion.  Shared heavy curves are module-scoped.
"""

import cmath
import math

import numpy as np
import pytest

from magnogyro.appendix import nd_appendix
from magnogyro.bath import (
    BathSpec,
    has_bound_state,
    memory_kernel,
    memory_kernel_quadrature,
)
from magnogyro.dynamics import u_spectral, u_volterra
from magnogyro.fock import fock_oracle
from magnogyro.gaussian import evolve_gaussian, nd_from_moments
from magnogyro.ideal import (
    f_of_R,
    g_threshold,
    h_crossing,
    h_of_G,
    mean_nd,
    ratio_case1,
    var_nd,
)
from magnogyro.model import ProbeState
from magnogyro.sensitivity import SensitivitySolver, local_minima, refine_minimum

PROBE = ProbeState(2j, 2j, 0.5)  # |alpha| = |beta| = 2 at the optimal phase
OMEGA = 0.1
TIME_GRID = np.linspace(0.0, 100.0, 2001)


def _curve(method, bath):
    solver = SensitivitySolver(PROBE, bath, OMEGA, method)
    return solver.curve(TIME_GRID)


@pytest.fixture(scope="module")
def ideal_solver():
    return SensitivitySolver(PROBE, None, OMEGA, "ideal")


@pytest.fixture(scope="module")
def spectral_curve_wc25():
    return _curve("spectral", BathSpec(0.05, 25.0, 1.0))


def test_criterion_01_case1_extremes():
    # extremes of 1/k over phi sit at cos(2 phi) = +/- 1 and equal e^{+/-G}
    for g in (0.25, 0.5, 1.0, 2.0):
        assert float(ratio_case1(g, 0.0)) == pytest.approx(
            math.exp(g), abs=1e-12 * math.exp(g))
        assert float(ratio_case1(g, math.pi / 2)) == pytest.approx(
            math.exp(-g), abs=1e-12)
        phi = np.linspace(0.0, 2 * math.pi, 20001)
        r = ratio_case1(g, phi)
        assert r.max() <= math.exp(g) * (1 + 1e-12)
        assert r.min() >= math.exp(-g) * (1 - 1e-12)


def test_criterion_02_threshold_crossing():
    g0 = h_crossing()
    assert abs(float(h_of_G(g0)) - 1.0) < 1e-10
    assert abs(g_threshold(0.0) - g0) < 1e-8


def test_criterion_03_case3_profile_shape():
    for g in (0.5, 1.0):
        grid = np.linspace(0.0, 1.0, 200, endpoint=False)
        falling = f_of_R(grid, g)
        assert np.all(np.diff(falling) < 0)
        grid = np.linspace(1.0, 50.0, 200)[1:]
        rising = f_of_R(grid, g)
        assert np.all(np.diff(rising) > 0)
        assert float(f_of_R(1.0, g)) == pytest.approx(math.exp(-g), abs=1e-12)
        h = float(h_of_G(g))
        assert abs(float(f_of_R(0.0, g)) - h) < 1e-4
        assert abs(float(f_of_R(1e6, g)) - h) < 1e-4


def test_criterion_04_lossless_fock_oracle():
    amplitudes = [(0.2, 0.2), (0.5 * cmath.exp(0.7j), 0.3), (0.4j, 0.2 - 0.1j)]
    for a, b in amplitudes:
        for g in (0.0, 0.15, 0.3):
            probe = ProbeState(a, b, g)
            for phi in (0.5, math.pi / 2, 2.0):
                mean_ref, var_ref = fock_oracle(probe, phi, n_max=25)
                assert abs(mean_nd(probe, phi) - mean_ref) < 1e-6
                assert abs(var_nd(probe, phi) - var_ref) < 1e-6


def test_criterion_05_appendix_oracle_equivalence():
    pairs = [
        (1.0, 1.0),
        (cmath.exp(-0.4j), cmath.exp(0.4j)),
        (cmath.exp(-1.2j), cmath.exp(0.3j)),
        (0.9, 0.8),
        (0.9 * cmath.exp(-0.7j), 0.8 * cmath.exp(0.2j)),
        (0.6 * cmath.exp(-1.1j), 0.95 * cmath.exp(0.9j)),
        (0.3, 0.3 * cmath.exp(0.5j)),
        (0.99 * cmath.exp(-0.1j), 0.5),
    ]
    worst_literal = 0.0
    for g in (0.2, 0.5):
        for a in (0.5, 2.0):
            probe = ProbeState(a, a, g)
            for u1, u2 in pairs:
                reference, _ = nd_from_moments(evolve_gaussian(probe, u1, u2))
                assert abs(nd_appendix(probe, u1, u2) - float(reference)) < 1e-8
                try:
                    literal = nd_appendix(probe, u1, u2,
                                          variant="printed-literal")
                    worst_literal = max(worst_literal,
                                        abs(literal - float(reference)))
                except (ArithmeticError, ValueError, ZeroDivisionError):
                    worst_literal = max(worst_literal, math.inf)
    # the literal transcription is wrong at order unity; record, don't hide
    assert worst_literal > 1e-3
    print(f"\nliteral printed-form worst discrepancy: {worst_literal}")


def test_criterion_06_bound_state_transitions():
    for omega_l, expected in ((0.9, 18.0), (1.1, 22.0)):
        grid = np.arange(10.0, 30.0, 0.02)
        exists = np.array([has_bound_state(BathSpec(0.05, wc, 1.0), omega_l)
                           for wc in grid])
        flips = np.flatnonzero(np.diff(exists.astype(int)))
        assert flips.size == 1
        transition = 0.5 * (grid[flips[0]] + grid[flips[0] + 1])
        assert abs(transition - expected) / expected < 0.01


def test_criterion_07_solver_cross_validation():
    omega_l = 1.1
    for wc in (10.0, 25.0):
        bath = BathSpec(0.05, wc, 1.0)
        grid = np.linspace(0.0, 50.0, 12501)
        uv = u_volterra(bath, omega_l, grid).samples
        us = u_spectral(bath, omega_l, grid).samples
        assert np.max(np.abs(uv - us)) <= 1e-3
    # Richardson self-convergence at order 2
    bath = BathSpec(0.05, 25.0, 1.0)
    ref = u_volterra(bath, omega_l, np.linspace(0.0, 8.0, 16001)).samples[::16]
    u_h = u_volterra(bath, omega_l, np.linspace(0.0, 8.0, 1001)).samples
    u_h2 = u_volterra(bath, omega_l, np.linspace(0.0, 8.0, 2001)).samples[::2]
    ratio = np.max(np.abs(u_h - ref)) / np.max(np.abs(u_h2 - ref))
    assert 3.5 <= ratio <= 4.5


def test_criterion_08_regime_reproduction(ideal_solver, spectral_curve_wc25):
    # (a) ideal minima equal across the window to 1e-10 relative
    ideal_curve = ideal_solver.curve(TIME_GRID)
    coarse = local_minima(ideal_curve)
    assert coarse.shape[0] >= 3
    refined = np.array([refine_minimum(ideal_solver, t - 1.5, t + 1.5)
                        for t in coarse[:, 0]])
    spread = refined[:, 1].max() - refined[:, 1].min()
    assert spread <= 1e-10 * refined[:, 1].min()

    # (b) Markov minima strictly increasing with final/first > 10
    markov = local_minima(_curve("markov", BathSpec(0.05, 25.0, 1.0)))
    assert np.all(np.diff(markov[:, 1]) > 0)
    assert markov[-1, 1] / markov[0, 1] > 10.0

    # (c) two-bound-state minima bounded: late-window max/min < 2 and the
    # least-squares slope over the last half consistent with zero
    spectral = local_minima(spectral_curve_wc25)
    late = spectral[spectral[:, 0] >= 50.0]
    assert late[:, 1].max() / late[:, 1].min() < 2.0
    t, y = late[:, 0], late[:, 1]
    coeffs, cov = np.polyfit(t, y, 1, cov=True)
    slope, slope_err = coeffs[0], math.sqrt(cov[0, 0])
    assert abs(slope) <= 3.0 * slope_err

    # (d) ideal 1/k at the optimum beats the shot-noise limit
    t_star, _ = refine_minimum(ideal_solver, coarse[0, 0] - 1.5,
                               coarse[0, 0] + 1.5)
    assert ideal_solver.ratio_t(t_star) < 1.0


def test_criterion_09_family_orderings(spectral_curve_wc25):
    # coupling family: Markov minima nondecreasing in gamma_b at
    # corresponding minima (the spectral gamma_b = 0.02 bath has no bound
    # state for these modes, so the Markov method carries the ordering)
    gamma_minima = [local_minima(_curve("markov", BathSpec(g, 25.0, 1.0)))
                    for g in (0.02, 0.05, 0.1)]
    n = min(m.shape[0] for m in gamma_minima)
    for prev, nxt in zip(gamma_minima, gamma_minima[1:]):
        assert np.all(nxt[:n, 1] >= prev[:n, 1] * (1 - 1e-12))

    # cutoff family: spectral late-time minima consistently ordered;
    # empirically the ordering is DECREASING in omega_c (recorded direction)
    def late_mean(curve):
        mins = local_minima(curve)
        sel = mins[mins[:, 0] >= 50.0]
        return sel[:, 1].mean()

    wc_means = [late_mean(_curve("spectral", BathSpec(0.05, wc, 1.0)))
                for wc in (23.0, 30.0)]
    wc_means.insert(1, late_mean(spectral_curve_wc25))
    assert wc_means[0] > wc_means[1] > wc_means[2]
    print(f"\nomega_c family late-minima means (23, 25, 30): {wc_means}")

    # ohmicity family: distinct curves; the super-Ohmic s = 3 bath retains
    # sensitivity best, i.e. its bounded minima deviate farthest below the
    # divergent Markov reference
    s_means = {s: late_mean(_curve("spectral", BathSpec(0.05, 25.0, s)))
               for s in (0.5, 3.0)}
    s_means[1.0] = late_mean(spectral_curve_wc25)
    values = [s_means[s] for s in (0.5, 1.0, 3.0)]
    for i in range(3):
        for j in range(i + 1, 3):
            assert abs(values[i] - values[j]) > 0.1 * max(values[i], values[j])
    markov_ref = local_minima(_curve("markov", BathSpec(0.05, 25.0, 1.0)))
    late_markov = markov_ref[markov_ref[:, 0] >= 50.0][:, 1].min()
    assert min(s_means, key=s_means.get) == 3.0
    assert late_markov > max(values)
    print(f"ohmicity family late-minima means (1/2, 1, 3): {values}")


def test_criterion_10_memory_kernel_quadrature():
    for s in (0.5, 1.0, 3.0):
        bath = BathSpec(0.05, 25.0, s)
        for x in (0.0, 0.02, 0.31, 1.7):
            closed = memory_kernel(bath, x)
            brute = memory_kernel_quadrature(bath, x)
            assert abs(closed - brute) <= 1e-8 * abs(brute)
