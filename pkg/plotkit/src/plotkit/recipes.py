"""Figure recipes: which CSV columns each panel displays, and how.

Recipes never compute physics; every plotted number, including dashed
asymptote overlays, comes from a CSV column or metadata entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PanelSpec:
    """One axes: a column pair from one CSV, with optional overlays."""

    source: str  # CSV filename relative to the artifact directory
    x: str
    y: str
    group_by: str | None = None  # one curve per distinct value
    where: dict = field(default_factory=dict)  # equality row filters
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    yscale: str = "linear"
    style: str = "line"  # or "points"
    asymptote_keys: tuple[str, ...] = ()  # metadata keys -> dashed hlines
    mark_minimum: bool = False  # red dot at the global finite minimum


@dataclass(frozen=True)
class FigureRecipe:
    """One output image assembled from a row-major grid of panels."""

    figure_id: str
    panels: tuple[PanelSpec, ...]
    ncols: int = 2

    def __post_init__(self):
        if not self.panels:
            raise ValueError("a figure needs at least one panel")
        if self.ncols < 1:
            raise ValueError("ncols must be >= 1")


def reference_figures() -> dict[str, FigureRecipe]:
    """The six reference-figure analogs, keyed by figure id."""
    t = r"$\omega_0 t$"
    dphi = r"$\delta\phi$"
    ratio = r"$1/k$"
    return {
        "fig2": FigureRecipe("fig2", (
            PanelSpec("fig2a.csv", "phi2", "ratio_k_inv",
                      group_by="dvarphi", xlabel=r"$\phi_2$", ylabel=ratio,
                      title="(a) phase-pair ratio, G = 1", yscale="log"),
            PanelSpec("fig2b.csv", "G", "ratio_k_inv",
                      xlabel="G", ylabel=ratio,
                      title=r"(b) $\phi_2 = \pi/2$ envelope"),
        )),
        "fig3": FigureRecipe("fig3", (
            PanelSpec("fig3a.csv", "R", "ratio_k_inv", group_by="G",
                      xlabel="R", ylabel="f(R)",
                      title="(a) amplitude-ratio profile",
                      asymptote_keys=("asymptote_h_G0.5", "asymptote_h_G1")),
            PanelSpec("fig3b.csv", "R", "g_threshold",
                      xlabel="R", ylabel=r"$G_{th}$",
                      title="(b) squeeze threshold", mark_minimum=True),
        )),
        "fig4": FigureRecipe("fig4", (
            PanelSpec("fig4a.csv", "t", "dphi", xlabel=t, ylabel=dphi,
                      title="(a) lossless", yscale="log", mark_minimum=True),
            PanelSpec("fig4b.csv", "t", "ratio_k_inv", xlabel=t, ylabel=ratio,
                      title="(b) lossless ratio", yscale="log",
                      mark_minimum=True),
            PanelSpec("fig4c.csv", "t", "dphi", xlabel=t, ylabel=dphi,
                      title=r"(c) Markov, $\gamma_b = 10^{-3}$",
                      yscale="log"),
            PanelSpec("fig4d.csv", "t", "dphi", xlabel=t, ylabel=dphi,
                      title=r"(d) Markov, $\gamma_b = 0.05$", yscale="log"),
        )),
        "fig5": FigureRecipe("fig5", (
            PanelSpec("fig5a.csv", "t", "abs_u", group_by="method",
                      where={"mode": 1.0}, xlabel=t, ylabel=r"$|u_1|$",
                      title=r"(a) $\omega_c = 10$"),
            PanelSpec("fig5b.csv", "t", "abs_u", group_by="method",
                      where={"mode": 1.0}, xlabel=t, ylabel=r"$|u_1|$",
                      title=r"(b) $\omega_c = 20$"),
            PanelSpec("fig5c.csv", "t", "abs_u", group_by="method",
                      where={"mode": 1.0}, xlabel=t, ylabel=r"$|u_1|$",
                      title=r"(c) $\omega_c = 25$"),
            PanelSpec("fig5d.csv", "t", "dphi", xlabel=t, ylabel=dphi,
                      title=r"(d) spectral, $\omega_c = 25$", yscale="log"),
            PanelSpec("fig5e.csv", "t", "dphi", style="points",
                      xlabel=t, ylabel=dphi, title="(e) minima trajectory"),
            PanelSpec("fig5f.csv", "t", "ratio_k_inv", xlabel=t, ylabel=ratio,
                      title="(f) ratio to shot noise", yscale="log"),
        ), ncols=3),
        "fig6": FigureRecipe("fig6", (
            PanelSpec("fig6a.csv", "t", "dphi", group_by="gamma_b",
                      style="points", xlabel=t, ylabel=dphi,
                      title="(a) coupling family"),
            PanelSpec("fig6b.csv", "t", "dphi", group_by="omega_c",
                      style="points", xlabel=t, ylabel=dphi,
                      title="(b) cutoff family"),
            PanelSpec("fig6c.csv", "t", "dphi", group_by="s",
                      style="points", xlabel=t, ylabel=dphi,
                      title="(c) ohmicity family"),
        ), ncols=3),
    }
