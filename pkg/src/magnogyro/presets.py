"""Experiment presets reproducing the six reference figures, plus custom runs.

Every preset expands to a fully resolved parameter set (probe amplitudes,
squeeze, bath family, rotation rate, grids) and emits deterministic CSV
artifacts.  Probe default: |alpha| = |beta| = 2 at coherent phase pi/2
(alpha = beta = 2i), the phase that maximizes the squeezing advantage for
equal amplitudes, with G = 0.5; baths default to s = 1, gamma_b = 0.05,
Omega = 0.1 omega_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import dynamics, ideal, sensitivity
from .bath import BathSpec
from .csvio import write_csv
from .model import ProbeState

SCHEMA_VERSION = 1

FIGURE_IDS = (
    "fig2a", "fig2b", "fig3a", "fig3b",
    "fig4a", "fig4b", "fig4c", "fig4d",
    "fig5a", "fig5b", "fig5c", "fig5d", "fig5e", "fig5f",
    "fig6a", "fig6b", "fig6c",
    "custom",
)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved parameters for one experiment run."""

    experiment: str = "custom"
    alpha: complex = 2j
    beta: complex = 2j
    G: float = 0.5
    baths: tuple[BathSpec, ...] = (BathSpec(0.05, 25.0, 1.0),)
    Omega: float = 0.1
    omega0: float = 1.0
    horizon: float = 100.0
    samples: int = 4001
    method: str = "spectral"
    derivative: str = "omega"
    photon_reference: str = "initial"

    def __post_init__(self):
        if self.experiment not in FIGURE_IDS:
            raise ConfigError(f"unknown experiment id {self.experiment!r}")
        if self.method not in dynamics.METHODS:
            raise ConfigError(f"unknown method {self.method!r}")
        if self.derivative not in sensitivity.DERIVATIVE_MODES:
            raise ConfigError(f"unknown derivative mode {self.derivative!r}")
        if self.photon_reference not in sensitivity.PHOTON_REFERENCES:
            raise ConfigError(f"unknown photon reference {self.photon_reference!r}")
        if self.samples < 3:
            raise ConfigError("samples must be >= 3")
        if self.horizon <= 0:
            raise ConfigError("horizon must be positive")
        if not self.baths:
            raise ConfigError("at least one bath required")

    @property
    def probe(self) -> ProbeState:
        return ProbeState(self.alpha, self.beta, self.G)

    def time_grid(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.samples)


_CONFIG_KEYS = {
    "schema_version", "experiment", "probe", "baths", "Omega", "omega0",
    "horizon", "samples", "method", "derivative", "photon_reference",
}
_PROBE_KEYS = {"alpha_re", "alpha_im", "beta_re", "beta_im", "G"}
_BATH_KEYS = {"gamma_b", "omega_c", "s"}


def config_from_mapping(data: dict) -> ExperimentConfig:
    """Parse a JSON-compatible mapping, rejecting unknown keys."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")

    kwargs: dict = {}
    if "experiment" in data:
        kwargs["experiment"] = data["experiment"]
    probe = data.get("probe", {})
    if not isinstance(probe, dict) or set(probe) - _PROBE_KEYS:
        raise ConfigError(f"probe keys must be within {sorted(_PROBE_KEYS)}")
    if probe:
        kwargs["alpha"] = complex(probe.get("alpha_re", 0.0), probe.get("alpha_im", 2.0))
        kwargs["beta"] = complex(probe.get("beta_re", 0.0), probe.get("beta_im", 2.0))
        kwargs["G"] = float(probe.get("G", 0.5))
    baths = data.get("baths")
    if baths is not None:
        if not isinstance(baths, list) or not baths:
            raise ConfigError("baths must be a nonempty list")
        parsed = []
        for b in baths:
            if not isinstance(b, dict) or set(b) - _BATH_KEYS:
                raise ConfigError(f"bath keys must be within {sorted(_BATH_KEYS)}")
            try:
                parsed.append(BathSpec(float(b.get("gamma_b", 0.05)),
                                       float(b.get("omega_c", 25.0)),
                                       float(b.get("s", 1.0))))
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        kwargs["baths"] = tuple(parsed)
    for key in ("Omega", "omega0", "horizon"):
        if key in data:
            kwargs[key] = float(data[key])
    if "samples" in data:
        kwargs["samples"] = int(data["samples"])
    for key in ("method", "derivative", "photon_reference"):
        if key in data:
            kwargs[key] = str(data[key])
    try:
        return ExperimentConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def preset_config(figure_id: str) -> ExperimentConfig:
    """The fully resolved configuration behind a figure preset."""
    base = ExperimentConfig(experiment=figure_id)
    if figure_id in ("fig4a", "fig4b"):
        return replace(base, method="ideal")
    if figure_id == "fig4c":
        return replace(base, method="markov", baths=(BathSpec(1e-3, 25.0, 1.0),))
    if figure_id == "fig4d":
        return replace(base, method="markov", baths=(BathSpec(0.05, 25.0, 1.0),))
    if figure_id == "fig5a":
        return replace(base, baths=(BathSpec(0.05, 10.0, 1.0),))
    if figure_id == "fig5b":
        return replace(base, baths=(BathSpec(0.05, 20.0, 1.0),))
    if figure_id == "fig5c":
        return replace(base, baths=(BathSpec(0.05, 25.0, 1.0),))
    if figure_id == "fig6a":
        return replace(base, baths=tuple(BathSpec(g, 25.0, 1.0)
                                         for g in (0.02, 0.05, 0.1)))
    if figure_id == "fig6b":
        return replace(base, baths=tuple(BathSpec(0.05, wc, 1.0)
                                         for wc in (23.0, 25.0, 30.0)))
    if figure_id == "fig6c":
        return replace(base, baths=tuple(BathSpec(0.05, 25.0, s)
                                         for s in (0.5, 1.0, 3.0)))
    return base


def _meta(config: ExperimentConfig, **extra) -> dict:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "experiment": config.experiment,
        "alpha_re": config.alpha.real, "alpha_im": config.alpha.imag,
        "beta_re": config.beta.real, "beta_im": config.beta.imag,
        "G": config.G, "Omega": config.Omega, "omega0": config.omega0,
    }
    meta.update(extra)
    return meta


def _sensitivity_csv(config: ExperimentConfig, bath: BathSpec | None,
                     path: Path) -> None:
    solver = sensitivity.SensitivitySolver(
        config.probe, bath, config.Omega, config.method,
        omega0=config.omega0, derivative=config.derivative,
        photon_reference=config.photon_reference, horizon=config.horizon,
    )
    curve = solver.curve(config.time_grid())
    meta = _meta(config, method=config.method, derivative=config.derivative,
                 photon_reference=config.photon_reference)
    if bath is not None:
        meta.update(gamma_b=bath.gamma_b, omega_c=bath.omega_c, s=bath.s)
    write_csv(path, curve.columns(), meta)


def _minima_csv(config: ExperimentConfig, label: str, values, path: Path) -> None:
    """Local-minima trajectories for a family of baths, long format."""
    cols = {"t": [], "dphi": [], label: []}
    for bath, value in zip(config.baths, values):
        solver = sensitivity.SensitivitySolver(
            config.probe, bath, config.Omega, config.method,
            omega0=config.omega0, derivative=config.derivative,
            photon_reference=config.photon_reference, horizon=config.horizon,
        )
        mins = sensitivity.local_minima(solver.curve(config.time_grid()))
        cols["t"].extend(mins[:, 0])
        cols["dphi"].extend(mins[:, 1])
        cols[label].extend([value] * len(mins))
    write_csv(path, cols, _meta(config, method=config.method))


def _trace_csv(config: ExperimentConfig, path: Path) -> None:
    bath = config.baths[0]
    cols = {"t": [], "re_u": [], "im_u": [], "abs_u": [], "method": [], "mode": []}
    for mode, omega in ((1, config.omega0 + config.Omega),
                        (2, config.omega0 - config.Omega)):
        grid = dynamics.default_grid(omega, bath, config.horizon)
        for method, solve in (("volterra", dynamics.u_volterra),
                              ("spectral", dynamics.u_spectral)):
            trace = solve(bath, omega, grid)
            cols["t"].extend(trace.time_grid)
            cols["re_u"].extend(trace.samples.real)
            cols["im_u"].extend(trace.samples.imag)
            cols["abs_u"].extend(np.abs(trace.samples))
            cols["method"].extend([method] * trace.time_grid.size)
            cols["mode"].extend([mode] * trace.time_grid.size)
    write_csv(path, cols, _meta(config, gamma_b=bath.gamma_b,
                                omega_c=bath.omega_c, s=bath.s))


def run_experiment(config: ExperimentConfig, out_dir) -> list[Path]:
    """Write the CSV artifact(s) for one experiment; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fid = config.experiment
    written: list[Path] = []

    def emit(name, fn, *args):
        path = out / name
        fn(*args, path)
        written.append(path)

    if fid == "fig2a":
        phi2 = np.linspace(0.0, 2.0 * math.pi, 801)
        g = 1.0
        cols = {"phi2": [], "dvarphi": [], "ratio_k_inv": []}
        for dphi in (0.0, math.pi / 4.0, math.pi):
            r = ideal.ratio_case2(g, phi2 + dphi, phi2)
            cols["phi2"].extend(phi2)
            cols["dvarphi"].extend([dphi] * phi2.size)
            cols["ratio_k_inv"].extend(r)
        path = out / "fig2a.csv"
        write_csv(path, cols, _meta(config, G=g, case=2))
        written.append(path)
    elif fid == "fig2b":
        gs = np.linspace(0.0, 2.0, 401)
        phi2 = math.pi / 2.0
        dphi = 2.0 * math.pi
        r = np.array([float(ideal.ratio_case2(g, phi2 + dphi, phi2)) for g in gs])
        path = out / "fig2b.csv"
        write_csv(path, {"G": gs, "ratio_k_inv": r},
                  _meta(config, phi2=phi2, dvarphi=dphi, case=2))
        written.append(path)
    elif fid == "fig3a":
        rr = np.linspace(0.0, 5.0, 501)
        cols = {"R": [], "G": [], "ratio_k_inv": []}
        meta = _meta(config, case=3, phi=math.pi / 2.0)
        for g in (0.5, 1.0):
            cols["R"].extend(rr)
            cols["G"].extend([g] * rr.size)
            cols["ratio_k_inv"].extend(ideal.f_of_R(rr, g))
            meta[f"asymptote_h_G{g:g}"] = float(ideal.h_of_G(g))
            meta[f"minimum_f1_G{g:g}"] = math.exp(-g)
        path = out / "fig3a.csv"
        write_csv(path, cols, meta)
        written.append(path)
    elif fid == "fig3b":
        rr = np.linspace(0.0, 5.0, 251)
        gth = np.array([ideal.g_threshold(float(r)) for r in rr])
        path = out / "fig3b.csv"
        write_csv(path, {"R": rr, "g_threshold": gth},
                  _meta(config, case=3, crossing_G0=ideal.h_crossing()))
        written.append(path)
    elif fid in ("fig4a", "fig4b"):
        emit(f"{fid}.csv", _sensitivity_csv, config, None)
    elif fid in ("fig4c", "fig4d", "fig5d", "fig5f"):
        emit(f"{fid}.csv", _sensitivity_csv, config, config.baths[0])
    elif fid in ("fig5a", "fig5b", "fig5c"):
        emit(f"{fid}.csv", _trace_csv, config)
    elif fid == "fig5e":
        emit("fig5e.csv", _minima_csv, config, "omega_c",
             [b.omega_c for b in config.baths])
    elif fid == "fig6a":
        emit("fig6a.csv", _minima_csv, config, "gamma_b",
             [b.gamma_b for b in config.baths])
    elif fid == "fig6b":
        emit("fig6b.csv", _minima_csv, config, "omega_c",
             [b.omega_c for b in config.baths])
    elif fid == "fig6c":
        emit("fig6c.csv", _minima_csv, config, "s",
             [b.s for b in config.baths])
    elif fid == "custom":
        if config.method == "ideal":
            emit("custom.csv", _sensitivity_csv, config, None)
        else:
            for i, bath in enumerate(config.baths):
                suffix = "" if len(config.baths) == 1 else f"_{i}"
                emit(f"custom{suffix}.csv", _sensitivity_csv, config, bath)
    else:  # pragma: no cover - FIGURE_IDS is exhaustive
        raise ConfigError(f"unhandled experiment {fid!r}")
    return written
