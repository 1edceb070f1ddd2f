import math

import numpy as np
import pytest

from magnogyro.bath import BathSpec
from magnogyro.ideal import delta_phi as ideal_delta_phi
from magnogyro.ideal import mean_photons
from magnogyro.model import ProbeState
from magnogyro.sensitivity import (
    SensitivityCurve,
    SensitivitySolver,
    delta_phi_t,
    local_minima,
    ratio_t,
    refine_minimum,
)

PROBE = ProbeState(2j, 2j, 0.5)
BATH = BathSpec(0.05, 25.0, 1.0)
OMEGA = 0.1


class TestValidation:
    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            SensitivitySolver(PROBE, BATH, OMEGA, "bogus")

    def test_bath_required_for_dissipative_methods(self):
        with pytest.raises(ValueError, match="bath"):
            SensitivitySolver(PROBE, None, OMEGA, "markov")

    def test_rotation_rate_range(self):
        with pytest.raises(ValueError, match="rotation rate"):
            SensitivitySolver(PROBE, None, 1.5, "ideal")

    def test_vacuum_probe_rejected(self):
        with pytest.raises(ValueError, match="vacuum"):
            SensitivitySolver(ProbeState(0.0, 0.0, 0.5), None, OMEGA, "ideal")

    def test_zero_time_is_infinite(self):
        solver = SensitivitySolver(PROBE, None, OMEGA, "ideal")
        assert solver.delta_phi_t(0.0) == math.inf
        assert solver.ratio_t(0.0) == math.inf
        with pytest.raises(ValueError):
            solver.delta_phi_t(-1.0)


class TestIdealMethod:
    def test_matches_closed_form_at_regular_phases(self):
        # with pure phases, delta_phi(t at 2 Omega t = phi*) equals the
        # lossless closed form; phi* = pi/2 is excluded (zero-derivative
        # point for equal amplitudes, both routes diverge)
        solver = SensitivitySolver(PROBE, None, OMEGA, "ideal")
        for phi_star in (math.pi, 2 * math.pi):
            t = phi_star / (2 * OMEGA)
            assert solver.delta_phi_t(t) == pytest.approx(
                ideal_delta_phi(PROBE, phi_star), rel=1e-6)

    def test_derivative_modes_agree_for_pure_phases(self):
        omega = SensitivitySolver(PROBE, None, OMEGA, "ideal")
        phase = SensitivitySolver(PROBE, None, OMEGA, "ideal",
                                  derivative="phase")
        t = np.array([3.0, 11.0, 40.0])
        np.testing.assert_allclose(omega.curve(t).dphi, phase.curve(t).dphi,
                                   rtol=1e-6)

    def test_unsqueezed_probe_recovers_shot_noise(self):
        probe = ProbeState(2.0, 2.0, 0.0)
        solver = SensitivitySolver(probe, None, OMEGA, "ideal")
        t_opt = 2 * math.pi / (2 * OMEGA)  # encoding phase 2*pi
        n = mean_photons(probe, mode="exact")
        assert solver.ratio_t(t_opt) == pytest.approx(1.0, abs=1e-8)
        assert solver.delta_phi_t(t_opt) == pytest.approx(1 / math.sqrt(n), abs=1e-8)

    def test_minima_below_shot_noise_with_squeezing(self):
        solver = SensitivitySolver(PROBE, None, OMEGA, "ideal")
        curve = solver.curve(np.linspace(0.0, 100.0, 2001))
        mins = local_minima(curve)
        assert mins.shape[0] >= 3
        t_star, _ = refine_minimum(solver, mins[0, 0] - 2.0, mins[0, 0] + 2.0)
        assert solver.ratio_t(t_star) < 1.0


class TestDissipativeMethods:
    def test_zero_coupling_equals_ideal_exactly(self):
        t = np.linspace(0.0, 30.0, 301)
        ref = SensitivitySolver(PROBE, None, OMEGA, "ideal").curve(t)
        for method in ("markov", "volterra", "spectral"):
            solver = SensitivitySolver(PROBE, BathSpec(0.0, 25.0, 1.0),
                                       OMEGA, method, horizon=30.0)
            curve = solver.curve(t)
            np.testing.assert_allclose(curve.mean_nd, ref.mean_nd, atol=1e-10)
            np.testing.assert_allclose(curve.var_nd, ref.var_nd, atol=1e-10)

    def test_markov_beyond_shot_noise_at_late_times(self):
        solver = SensitivitySolver(PROBE, BATH, OMEGA, "markov")
        curve = solver.curve(np.linspace(60.0, 100.0, 201))
        finite = curve.ratio_k_inv[np.isfinite(curve.ratio_k_inv)]
        assert np.all(finite > 1.0)

    def test_variance_nonnegative_under_decay(self):
        solver = SensitivitySolver(PROBE, BATH, OMEGA, "markov")
        curve = solver.curve(np.linspace(0.0, 50.0, 501))
        assert np.all(curve.var_nd >= 0.0)

    def test_volterra_horizon_enforced(self):
        solver = SensitivitySolver(PROBE, BATH, OMEGA, "volterra", horizon=10.0)
        with pytest.raises(ValueError, match="horizon"):
            solver.curve(np.array([12.0]))

    def test_photon_reference_instantaneous_shrinks_ratio(self):
        t = np.array([20.0])
        initial = SensitivitySolver(PROBE, BATH, OMEGA, "markov").curve(t)
        instant = SensitivitySolver(PROBE, BATH, OMEGA, "markov",
                                    photon_reference="instantaneous").curve(t)
        # decayed photon number is smaller, so the SNL is looser and the
        # ratio smaller
        assert instant.ratio_k_inv[0] < initial.ratio_k_inv[0]

    def test_module_level_helpers_cache(self):
        a = delta_phi_t(PROBE, BATH, OMEGA, 15.0, "markov")
        b = delta_phi_t(PROBE, BATH, OMEGA, 15.0, "markov")
        assert a == b
        assert ratio_t(PROBE, BATH, OMEGA, 15.0, "markov") > 0


class TestCurveUtilities:
    def test_columns_layout(self):
        solver = SensitivitySolver(PROBE, None, OMEGA, "ideal")
        curve = solver.curve(np.linspace(0.0, 10.0, 11))
        cols = curve.columns()
        assert list(cols) == ["t", "mean_nd", "var_nd", "dphi",
                              "ratio_k_inv", "method"]
        assert cols["method"][0] == "ideal"

    def test_local_minima_parabolic_refinement(self):
        t = np.linspace(0.0, 10.0, 101)
        y = (t - 4.03) ** 2 + 1.0
        curve = SensitivityCurve(t, y, y, y, y, "ideal")
        mins = local_minima(curve)
        assert mins.shape == (1, 2)
        assert mins[0, 0] == pytest.approx(4.03, abs=1e-9)
        assert mins[0, 1] == pytest.approx(1.0, abs=1e-9)

    def test_local_minima_empty_for_monotone(self):
        t = np.linspace(0.0, 10.0, 50)
        y = np.exp(t / 5)
        curve = SensitivityCurve(t, y, y, y, y, "ideal")
        assert local_minima(curve).shape == (0, 2)
