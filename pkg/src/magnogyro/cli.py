"""Command-line harness: figure presets, sweeps, and ad-hoc curve dumps.

Exit codes: 0 success, 2 configuration error, 3 solver failure.  Failures
emit a single machine-readable JSON record on stderr.  All computations are
deterministic; identical invocations produce byte-identical CSV files
(--seed is accepted but reserved for future stochastic features).
"""

from __future__ import annotations

import functools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np

from . import dynamics, ideal, presets
from .csvio import write_csv
from .model import ProbeState
from .presets import ConfigError, ExperimentConfig, config_from_mapping


def _fail(code: int, kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    raise SystemExit(code)


def _guarded(fn):
    """Map configuration faults to exit 2 and solver faults to exit 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, json.JSONDecodeError) as exc:
            _fail(2, type(exc).__name__, str(exc))
        except (ValueError, ArithmeticError, RuntimeError,
                FloatingPointError, OSError) as exc:
            _fail(3, type(exc).__name__, str(exc))

    return wrapper


def _load_config(ctx) -> ExperimentConfig:
    path = ctx.obj.get("config")
    if path is None:
        return ExperimentConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        _fail(2, "ConfigError", f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        _fail(2, "ConfigError", f"config is not valid JSON: {exc}")
    return config_from_mapping(data)


def _out_dir(ctx) -> Path:
    return Path(ctx.obj.get("out") or ".")


@click.group()
@click.option("--config", type=click.Path(), default=None,
              help="JSON experiment configuration.")
@click.option("--out", type=click.Path(), default=None,
              help="Output directory for CSV artifacts (default: cwd).")
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker threads for sweep evaluation.")
@click.option("--seed", type=int, default=None,
              help="Reserved; all current computations are deterministic.")
@click.pass_context
def main(ctx, config, out, threads, seed):
    """Phase-sensitivity simulations for the squeezed-probe optical gyroscope."""
    if threads < 1:
        _fail(2, "ConfigError", "--threads must be >= 1")
    ctx.obj = {"config": config, "out": out, "threads": threads, "seed": seed}


@main.command("ideal")
@click.option("--phi-start", type=float, default=0.0, show_default=True)
@click.option("--phi-stop", type=float, default=2.0 * math.pi,
              show_default="2*pi")
@click.option("--points", type=int, default=401, show_default=True)
@click.pass_context
@_guarded
def ideal_cmd(ctx, phi_start, phi_stop, points):
    """Lossless interferometer statistics versus encoding phase."""
    config = _load_config(ctx)
    if points < 2:
        raise ConfigError("--points must be >= 2")
    probe = config.probe
    phi = np.linspace(phi_start, phi_stop, points)
    mean = np.array([ideal.mean_nd(probe, p) for p in phi])
    var = np.array([ideal.var_nd(probe, p) for p in phi])
    dphi = np.array([ideal.delta_phi(probe, p) for p in phi])
    n_ref = ideal.mean_photons(probe, mode="exact")
    ratio = dphi * math.sqrt(n_ref)
    out = _out_dir(ctx)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "ideal.csv"
    write_csv(path, {"phi": phi, "mean_nd": mean, "var_nd": var,
                     "dphi": dphi, "ratio_k_inv": ratio},
              {"alpha_re": probe.alpha.real, "alpha_im": probe.alpha.imag,
               "beta_re": probe.beta.real, "beta_im": probe.beta.imag,
               "G": probe.G, "mean_photons": n_ref})
    click.echo(str(path))


@main.command("udynamics")
@click.option("--method", type=click.Choice(dynamics.METHODS),
              default="spectral", show_default=True)
@click.option("--omega-l", type=float, default=1.1, show_default=True,
              help="Mode frequency in units of omega_0.")
@click.pass_context
@_guarded
def udynamics_cmd(ctx, method, omega_l):
    """Amplitude function u(t) of one damped mode."""
    config = _load_config(ctx)
    bath = config.baths[0]
    grid = dynamics.default_grid(omega_l, bath, config.horizon)
    if method == "ideal":
        trace = dynamics.u_ideal(omega_l, grid)
    elif method == "markov":
        trace = dynamics.u_markov(bath, omega_l, grid)
    elif method == "volterra":
        trace = dynamics.u_volterra(bath, omega_l, grid)
    else:
        trace = dynamics.u_spectral(bath, omega_l, grid)
    shift, decay = dynamics.rates(trace)
    out = _out_dir(ctx)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"udynamics_{method}.csv"
    write_csv(path, {"t": trace.time_grid,
                     "re_u": trace.samples.real,
                     "im_u": trace.samples.imag,
                     "abs_u": np.abs(trace.samples),
                     "rate_shift": shift, "rate_decay": decay},
              {"method": method, "omega_l": omega_l,
               "gamma_b": bath.gamma_b, "omega_c": bath.omega_c, "s": bath.s})
    click.echo(str(path))


@main.command("sensitivity")
@click.pass_context
@_guarded
def sensitivity_cmd(ctx):
    """Time-resolved delta_phi and 1/k for the configured experiment."""
    config = _load_config(ctx)
    config = presets.ExperimentConfig(**{
        **{f: getattr(config, f) for f in (
            "alpha", "beta", "G", "baths", "Omega", "omega0", "horizon",
            "samples", "method", "derivative", "photon_reference")},
        "experiment": "custom",
    })
    for path in presets.run_experiment(config, _out_dir(ctx)):
        click.echo(str(path))


@main.command("figure")
@click.argument("figure_id",
                type=click.Choice([f for f in presets.FIGURE_IDS
                                   if f != "custom"] + ["all"]))
@click.pass_context
@_guarded
def figure_cmd(ctx, figure_id):
    """Emit the CSV artifact(s) behind one reference figure panel."""
    ids = ([f for f in presets.FIGURE_IDS if f != "custom"]
           if figure_id == "all" else [figure_id])
    out = _out_dir(ctx)
    for fid in ids:
        for path in presets.run_experiment(presets.preset_config(fid), out):
            click.echo(str(path))


_SWEEP_PARAMS = ("G", "R", "phi", "phi1", "phi2")


def _sweep_value(quantity: str, probe: ProbeState, params: dict) -> float:
    g = params["G"]
    if quantity == "ratio_case1":
        return float(ideal.ratio_case1(g, params["phi"]))
    if quantity == "ratio_case2":
        return float(ideal.ratio_case2(g, params["phi1"], params["phi2"]))
    if quantity == "ratio_case3":
        return float(ideal.ratio_case3(g, params["R"], params["phi"]))
    if quantity == "f_of_r":
        return float(ideal.f_of_R(params["R"], g))
    if quantity == "h_of_g":
        return float(ideal.h_of_G(g))
    if quantity == "g_threshold":
        return float(ideal.g_threshold(params["R"]))
    probe = ProbeState(probe.alpha, probe.beta, g)
    if quantity == "mean_nd":
        return float(ideal.mean_nd(probe, params["phi"]))
    if quantity == "var_nd":
        return float(ideal.var_nd(probe, params["phi"]))
    if quantity == "delta_phi":
        return float(ideal.delta_phi(probe, params["phi"]))
    raise ConfigError(f"unknown quantity {quantity!r}")


@main.command("sweep")
@click.option("--quantity", required=True,
              type=click.Choice(["ratio_case1", "ratio_case2", "ratio_case3",
                                 "f_of_r", "h_of_g", "g_threshold",
                                 "mean_nd", "var_nd", "delta_phi"]))
@click.option("--param", "param", required=True,
              type=click.Choice(_SWEEP_PARAMS),
              help="Name of the swept parameter.")
@click.option("--start", type=float, required=True)
@click.option("--stop", type=float, required=True)
@click.option("--num", type=int, required=True, help="Grid size (>= 1).")
@click.option("--G", "g_base", type=float, default=0.5, show_default=True)
@click.option("--R", "r_base", type=float, default=1.0, show_default=True)
@click.option("--phi", type=float, default=math.pi / 2, show_default="pi/2")
@click.option("--phi1", type=float, default=math.pi / 2, show_default="pi/2")
@click.option("--phi2", type=float, default=math.pi / 2, show_default="pi/2")
@click.pass_context
@_guarded
def sweep_cmd(ctx, quantity, param, start, stop, num, g_base, r_base,
              phi, phi1, phi2):
    """Evaluate one closed-form quantity over a parameter grid."""
    if num < 1:
        raise ConfigError("--num must be >= 1 (empty grid)")
    config = _load_config(ctx)
    base = {"G": g_base, "R": r_base, "phi": phi, "phi1": phi1, "phi2": phi2}
    grid = np.linspace(start, stop, num)

    def point(x: float) -> float:
        params = dict(base)
        params[param] = float(x)
        return _sweep_value(quantity, config.probe, params)

    threads = ctx.obj["threads"]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(point, grid))
    else:
        values = [point(x) for x in grid]

    out = _out_dir(ctx)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"sweep_{quantity}_{param}.csv"
    meta = {"quantity": quantity, "param": param, **base}
    del meta[param]
    write_csv(path, {param: grid, quantity: np.array(values)}, meta)
    click.echo(str(path))


if __name__ == "__main__":  # pragma: no cover
    main()
