"""SVG figures drawn from written CSV tables, never from in-memory results."""

import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from src.enums import Command  # noqa: E402
from src.exceptions import InvalidParametersError  # noqa: E402
from src.output.table import read_csv  # noqa: E402

_MARKERS = ("o", "v", "^", "s", "p", "D")
# a fixed date keeps the SVG bytes reproducible
_SVG_METADATA = {"Date": None}


def _marker(i: int) -> str:
    return _MARKERS[i % len(_MARKERS)]


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
    return path


def plot_sweep(frame: pd.DataFrame, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for i, ((n, gamma), group) in enumerate(frame.groupby(["N", "gamma"], sort=True)):
        ax.plot(group["h"], group["chi"], _marker(i) + "-", ms=3, label=f"N={n}, γ={gamma:g}")
    ax.set_yscale("log")
    ax.axvline(1.0, color="k", ls="--", lw=0.8)
    ax.set_xlabel("h")
    ax.set_ylabel(r"$\chi_F$")
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_peaks(frame: pd.DataFrame, path: Path) -> Path:
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 4))
    for i, (gamma, group) in enumerate(frame.groupby("gamma", sort=True)):
        left.loglog(group["N"], group["chi_max"], _marker(i) + "-", label=f"γ={gamma:g}")
        right.loglog(group["N"], 1 - group["h_max"], _marker(i) + "-", label=f"γ={gamma:g}")
    left.set_xlabel("N")
    left.set_ylabel(r"$\chi_{F,\max}$")
    right.set_xlabel("N")
    right.set_ylabel(r"$h_c - h_{\max}$")
    left.legend(fontsize=8)
    return _save(fig, path)


def plot_scale(frame: pd.DataFrame, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for i, (window, group) in enumerate(frame.groupby(["N_min", "N_max"], sort=True)):
        ax.errorbar(
            group["gamma"],
            group["mu"],
            yerr=group["mu_uncertainty"],
            fmt=_marker(i),
            capsize=3,
            label=f"N ∈ [{window[0]}, {window[1]}]",
        )
    ax.set_xlabel("γ")
    ax.set_ylabel("μ")
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_collapse(frame: pd.DataFrame, path: Path) -> Path:
    gammas = sorted(frame["gamma"].unique())
    fig, axes = plt.subplots(1, len(gammas), figsize=(4 * len(gammas), 4), squeeze=False)
    for ax, gamma in zip(axes[0], gammas):
        panel = frame[frame["gamma"] == gamma]
        for i, (n, group) in enumerate(panel.groupby("N", sort=True)):
            ax.plot(group["x"], group["y"], _marker(i), ms=3, label=f"N={n}")
        nu = panel["nu"].iloc[0]
        ax.set_title(f"γ={gamma:g}, ν={nu:.4f}")
        ax.set_xlabel(r"$N^\nu (h - h_{\max})$")
        ax.set_ylabel(r"$(\chi_{\max} - \chi_F)/\chi_F$")
        ax.legend(fontsize=8)
    return _save(fig, path)


def plot_analytic(frame: pd.DataFrame, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for i, ((n, gamma), group) in enumerate(frame.groupby(["N", "gamma"], sort=True)):
        ax.plot(group["h"], group["chi_ed"], _marker(i), label=f"ED N={n}, γ={gamma:g}")
        ax.plot(group["h"], group["chi_hp_leading"], "k:", lw=0.8)
    ax.set_yscale("log")
    ax.set_xlabel("h")
    ax.set_ylabel(r"$\chi_F$")
    ax.legend(fontsize=8)
    return _save(fig, path)


_PLOTTERS = {
    Command.SWEEP: plot_sweep,
    Command.PEAK: plot_peaks,
    Command.SCALE: plot_scale,
    Command.COLLAPSE: plot_collapse,
    Command.ANALYTIC: plot_analytic,
}


def plot_table(command: Command, csv_path: str | os.PathLike) -> Path:
    """Draw the figure for a command's CSV next to it, with an .svg suffix."""
    if command not in _PLOTTERS:
        raise InvalidParametersError(f"no figure is defined for '{command}'")
    csv_path = Path(csv_path)
    return _PLOTTERS[command](read_csv(csv_path), csv_path.with_suffix(".svg"))
