"""Figures for sweep tables and EF surfaces, rendered straight to files."""

from __future__ import annotations

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .sweeps import Surface, SweepTable

_YLABELS = {
    "fig2": r"$\eta^E$",
    "fig3": r"$R' = P_{\rm lost}/P$",
    "fig4": r"$\bar R = P^*_{\rm eco}/P^*_{\rm pow}$",
}


def _figure(width=6.0, height=None):
    height = height or width * 0.75
    fig = Figure(figsize=(width, height))
    FigureCanvasAgg(fig)
    return fig


def _style(name):
    # limit curves solid, finite-gamma samples dashed
    return "--" if "_g" in name else "-"


def plot_sweep(table: SweepTable, path, dpi=150):
    fig = _figure()
    ax = fig.add_subplot()
    x = table.column("eta_C")
    for name in table.columns[1:]:
        ax.plot(x, table.column(name), _style(name), lw=1.2, label=name)
    ax.set_xlabel(r"$\eta_C$")
    ax.set_ylabel(_YLABELS.get(table.kind, ""))
    ax.set_xlim(x[0], x[-1])
    ax.legend(fontsize=6, ncol=2, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata={"Software": None})


def plot_surface(surface: Surface, path, dpi=150):
    fig = _figure()
    ax = fig.add_subplot()
    cs = ax.contourf(surface.w_c, surface.w_h, surface.eco, levels=40, cmap="viridis")
    ax.contour(surface.w_c, surface.w_h, surface.eco, levels=[0.0], colors="w", linewidths=0.8)
    fig.colorbar(cs, ax=ax, label="E")
    r = surface.result
    ax.plot([r.w_c_star], [r.w_h_star], "r+", ms=10, mew=1.5)
    ax.set_xlabel(r"$\omega_c$")
    ax.set_ylabel(r"$\omega_h$")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi, metadata={"Software": None})
