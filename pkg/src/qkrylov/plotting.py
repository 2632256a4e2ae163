"""Render report figures next to their CSV outputs (headless Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_reconstruction_plot(name: str, ls, r_means, r_stds, path: Path) -> None:
    """Mean reconstruction error vs approximation order, log scale."""
    ls = np.asarray(ls)
    means = np.asarray(r_means, dtype=float)
    stds = np.asarray(r_stds, dtype=float)
    floor = 1e-16  # log scale cannot show exact zeros
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.errorbar(ls, np.maximum(means, floor), yerr=stds, marker="o", capsize=3)
    ax.set_yscale("log")
    ax.set_xlabel("approximation order $l$")
    ax.set_ylabel("mean reconstruction error $r(l)$")
    ax.set_title(name)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_effdim_plot(name: str, T_values, m_eff_values, m: int, d: int, path: Path) -> None:
    """Effective dimension vs total evolution time, with the saturation line."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(np.asarray(T_values, float), np.asarray(m_eff_values, float), lw=1.2)
    ax.axhline(d, color="tab:orange", ls="--", lw=1.0, label=f"distinct eigenvalues d = {d}")
    ax.set_xlabel("evolution time $T$")
    ax.set_ylabel(r"effective dimension $m_\mathrm{eff}$")
    ax.set_ylim(0.0, m + 1.0)
    ax.set_title(name)
    ax.legend(loc="lower right", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_spread_plot(name: str, t_values, cs_values, path: Path) -> None:
    """Spread complexity of the evolved state over time."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    ax.plot(np.asarray(t_values, float), np.asarray(cs_values, float), lw=1.2)
    ax.set_xlabel("time $t$")
    ax.set_ylabel("spread complexity $C_S(t)$")
    ax.set_title(name)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
