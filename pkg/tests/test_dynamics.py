import math

import numpy as np
import pytest

from magnogyro.bath import BathSpec, bound_state, spectral_density
from magnogyro.dynamics import (
    AmplitudeTrace,
    default_grid,
    max_step,
    rates,
    spectral_amplitude,
    u_ideal,
    u_markov,
    u_spectral,
    u_volterra,
)

BATH = BathSpec(0.05, 25.0, 1.0)
OMEGA = 1.1


class TestAmplitudeTrace:
    def test_requires_unit_start(self):
        t = np.linspace(0, 1, 5)
        with pytest.raises(ValueError, match="u\\(0\\)"):
            AmplitudeTrace(t, np.full(5, 0.5 + 0j), 1.0, "ideal")

    def test_rejects_noncontractive_samples(self):
        t = np.linspace(0, 1, 5)
        u = np.array([1.0, 1.2, 1.0, 1.0, 1.0], dtype=complex)
        with pytest.raises(ValueError, match="non-contractive"):
            AmplitudeTrace(t, u, 1.0, "ideal")

    def test_rejects_nonuniform_grid(self):
        t = np.array([0.0, 0.1, 0.3, 0.4])
        with pytest.raises(ValueError, match="uniform"):
            AmplitudeTrace(t, np.exp(-1j * t), 1.0, "ideal")

    def test_step_bound_includes_kernel_scale(self):
        assert max_step(OMEGA, BATH) == pytest.approx(0.2 / 25.0)
        assert max_step(OMEGA, None) == pytest.approx(0.02 * 2 * math.pi / OMEGA)


class TestMarkov:
    def test_decay_rate_is_golden_rule(self):
        grid = default_grid(OMEGA, BATH, horizon=10.0)
        trace = u_markov(BATH, OMEGA, grid)
        kappa = math.pi * spectral_density(BATH, OMEGA)
        assert np.abs(trace.samples[-1]) == pytest.approx(
            math.exp(-kappa * 10.0), rel=1e-12)

    def test_rates_recover_parameters(self):
        grid = default_grid(OMEGA, BATH, horizon=5.0)
        shift, decay = rates(u_markov(BATH, OMEGA, grid))
        kappa = math.pi * spectral_density(BATH, OMEGA)
        assert np.nanmax(np.abs(shift - OMEGA)) < 1e-4
        assert np.nanmax(np.abs(decay - kappa)) < 1e-4


class TestVolterra:
    def test_exact_in_decoupled_limit(self):
        bath0 = BathSpec(0.0, 25.0, 1.0)
        grid = default_grid(OMEGA, bath0, horizon=20.0)
        trace = u_volterra(bath0, OMEGA, grid)
        ref = np.exp(-1j * OMEGA * grid)
        assert np.max(np.abs(trace.samples - ref)) < 1e-12

    def test_step_bound_enforced(self):
        grid = np.linspace(0.0, 10.0, 101)  # h = 0.1 > 0.2 / omega_c
        with pytest.raises(ValueError, match="resolution bound"):
            u_volterra(BATH, OMEGA, grid)

    def test_second_order_convergence(self):
        horizon = 8.0
        ref_grid = np.linspace(0.0, horizon, 16001)
        ref = u_volterra(BATH, OMEGA, ref_grid).samples[::16]
        errors = []
        for n, stride in ((1001, 1), (2001, 2)):
            grid = np.linspace(0.0, horizon, n)
            u = u_volterra(BATH, OMEGA, grid).samples[::stride]
            errors.append(np.max(np.abs(u - ref)))
        ratio = errors[0] / errors[1]
        assert 3.5 <= ratio <= 4.5

    def test_contractive(self):
        grid = default_grid(OMEGA, BATH, horizon=30.0)
        trace = u_volterra(BATH, OMEGA, grid)
        assert np.max(np.abs(trace.samples)) <= 1.0 + 1e-6


class TestSpectral:
    def test_exact_in_decoupled_limit(self):
        bath0 = BathSpec(0.0, 25.0, 1.0)
        grid = default_grid(OMEGA, bath0, horizon=20.0)
        trace = u_spectral(bath0, OMEGA, grid)
        ref = np.exp(-1j * OMEGA * grid)
        assert np.max(np.abs(trace.samples - ref)) < 1e-12

    def test_long_time_plateau_is_bound_state_residue(self):
        # with a bound state, |u| settles near the residue Z
        amp = spectral_amplitude(BATH, OMEGA)
        z = bound_state(BATH, OMEGA).residue
        t = np.linspace(400.0, 420.0, 64)
        mods = np.abs(amp.evaluate(t))
        assert mods.min() > 0.8 * z
        assert abs(np.mean(mods) - z) < 0.1 * z

    def test_decays_without_bound_state(self):
        bath = BathSpec(0.05, 15.0, 1.0)  # below both thresholds
        grid = default_grid(OMEGA, bath, horizon=60.0)
        trace = u_spectral(bath, OMEGA, grid)
        # branch-cut-only decay is slow but unbounded; no residual plateau
        assert np.abs(trace.samples[-1]) < 0.1
        assert np.abs(trace.samples[-1]) < 0.5 * np.abs(
            trace.samples[trace.time_grid.searchsorted(10.0)])

    def test_agrees_with_volterra(self):
        grid = np.linspace(0.0, 20.0, 4001)
        uv = u_volterra(BATH, OMEGA, grid).samples
        us = u_spectral(BATH, OMEGA, grid).samples
        assert np.max(np.abs(uv - us)) < 1e-3


class TestIdeal:
    def test_pure_phase(self):
        grid = np.linspace(0.0, 10.0, 1001)
        trace = u_ideal(OMEGA, grid)
        assert np.allclose(np.abs(trace.samples), 1.0)
        shift, decay = rates(trace)
        assert np.nanmax(np.abs(shift - OMEGA)) < 1e-3
        assert np.nanmax(np.abs(decay)) < 1e-3
