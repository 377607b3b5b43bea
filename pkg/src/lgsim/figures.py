"""Matplotlib report figures written next to the CSV output."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .engine import CLASSICAL_BOUND, QUANTUM_BOUND  # noqa: E402

_SAVE_KW = {"dpi": 150, "metadata": {"Software": None}}


def _limits(ax):
    ax.axhline(CLASSICAL_BOUND, color="0.3", ls="--", lw=1, label="classical limit")
    ax.axhline(QUANTUM_BOUND, color="0.6", ls=":", lw=1, label="quantum limit")


def plot_envelopes(rows, path, r_star=None) -> Path:
    """Two panels (K- and K+) of the envelope extrema against retardation."""
    r = [row.retardation for row in rows]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)
    for ax, key, label in zip(axes, ("minus", "plus"), ("$K_-$", "$K_+$")):
        ax.plot(r, [getattr(row, f"env_min_{key}") for row in rows], color="C3", label="min")
        ax.plot(r, [getattr(row, f"env_max_{key}") for row in rows], color="C0", label="max")
        _limits(ax)
        if r_star is not None:
            ax.axvline(r_star, color="k", lw=0.8, alpha=0.5)
        ax.set_xlabel(r"retardation ($\lambda_0$)")
        ax.set_title(f"{label} envelope")
    axes[0].set_ylabel("correlator combination")
    axes[0].legend(fontsize=8, loc="upper right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def plot_tilt_scan(scan, which, retardation, path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot([d for d, _ in scan], [v for _, v in scan], color="C3")
    _limits(ax)
    ax.set_xlabel(r"tilt phase $\delta$ (rad)")
    ax.set_ylabel(f"$K_{{{'-' if which == 'minus' else '+'}}}$")
    ax.set_title(rf"R = {retardation:g} $\lambda_0$")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def plot_classical(rows, path) -> Path:
    p = [row["p"] for row in rows]
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(p, [row["k_minus"] for row in rows], color="C3", label="$K_-$")
    ax.plot(p, [row["k_plus"] for row in rows], color="C0", label="$K_+$")
    mc_minus = [row["mc_k13"] - row["mc_k12"] - row["mc_k23"] for row in rows]
    ax.plot(p, mc_minus, ".", color="C3", ms=3, label="$K_-$ (Monte Carlo)")
    _limits(ax)
    ax.set_xlabel("flip probability p")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path
