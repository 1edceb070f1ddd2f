"""Phase sensitivity of a two-mode squeezed-probe optical gyroscope.

The package models a rotation-sensing interferometer whose two encoding
modes ride at omega_0 +/- Omega, fed by a two-mode squeezed coherent probe
and read out through the intensity-difference operator.  It covers the
lossless closed forms, the structured-bath open dynamics of the mode
amplitudes u_l(t) (Markov, Volterra, and spectral bound-state methods),
and the resulting time-resolved sensitivity delta_phi(t) and its ratio to
the shot-noise limit.
"""

from .appendix import ND_APPENDIX_VARIANTS, nd_appendix
from .bath import (
    TAIL_CUTOFF,
    BathSpec,
    BoundStateResult,
    bound_state,
    has_bound_state,
    lamb_shift,
    memory_kernel,
    spectral_density,
)
from .dynamics import (
    METHODS,
    AmplitudeTrace,
    default_grid,
    rates,
    spectral_amplitude,
    u_ideal,
    u_markov,
    u_spectral,
    u_volterra,
)
from .gaussian import (
    GaussianState,
    evolve_gaussian,
    nd_from_moments,
    squeezed_coherent_moments,
)
from .ideal import (
    delta_phi,
    dmean_nd_dphi,
    f_of_R,
    g_threshold,
    h_crossing,
    h_of_G,
    mean_nd,
    mean_photons,
    ratio_case1,
    ratio_case2,
    ratio_case3,
    snl,
    var_nd,
)
from .model import ProbeState
from .presets import (
    FIGURE_IDS,
    ConfigError,
    ExperimentConfig,
    config_from_mapping,
    preset_config,
    run_experiment,
)
from .sensitivity import (
    DERIVATIVE_MODES,
    PHOTON_REFERENCES,
    SensitivityCurve,
    SensitivitySolver,
    delta_phi_t,
    local_minima,
    ratio_t,
    refine_minimum,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeTrace",
    "BathSpec",
    "BoundStateResult",
    "ConfigError",
    "DERIVATIVE_MODES",
    "ExperimentConfig",
    "FIGURE_IDS",
    "GaussianState",
    "METHODS",
    "ND_APPENDIX_VARIANTS",
    "PHOTON_REFERENCES",
    "ProbeState",
    "SensitivityCurve",
    "SensitivitySolver",
    "TAIL_CUTOFF",
    "bound_state",
    "config_from_mapping",
    "default_grid",
    "delta_phi",
    "delta_phi_t",
    "dmean_nd_dphi",
    "evolve_gaussian",
    "f_of_R",
    "g_threshold",
    "h_crossing",
    "h_of_G",
    "has_bound_state",
    "lamb_shift",
    "local_minima",
    "mean_nd",
    "mean_photons",
    "memory_kernel",
    "nd_appendix",
    "nd_from_moments",
    "preset_config",
    "rates",
    "ratio_case1",
    "ratio_case2",
    "ratio_case3",
    "ratio_t",
    "refine_minimum",
    "run_experiment",
    "snl",
    "spectral_amplitude",
    "spectral_density",
    "squeezed_coherent_moments",
    "u_ideal",
    "u_markov",
    "u_spectral",
    "u_volterra",
    "var_nd",
]
