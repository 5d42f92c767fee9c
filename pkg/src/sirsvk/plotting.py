"""Figure rendering for trajectories and sweep results.

Each function writes one PNG next to the delimited output; rendering is
optional and never affects the CSV contract.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .integrator import Trajectory
from .sweep import NOT_REACHED_SENTINEL, KappaRun, SweepRecord

__all__ = [
    "plot_kappa_curves",
    "plot_model_compare",
    "plot_peak_summary",
    "plot_threshold",
    "plot_trajectory",
]

_COMPARTMENT_LABELS = {
    "S": "susceptible",
    "I": "infected",
    "R": "recovered",
    "V": "vaccinated",
}


def _kappa_label(kappa: float) -> str:
    return "κ = ∞" if math.isinf(kappa) else f"κ = {kappa:g}"


def plot_trajectory(traj: Trajectory, path: Path) -> None:
    """All four compartment fractions over time."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, label in _COMPARTMENT_LABELS.items():
        ax.plot(traj.times, traj.compartment(name), label=label)
    ax.set_xlabel("time")
    ax.set_ylabel("population fraction")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_kappa_curves(runs: list[KappaRun], compartment: str, path: Path) -> None:
    """One compartment's curve per confidence value."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for run in runs:
        if run.trajectory is None:
            continue
        ax.plot(
            run.trajectory.times,
            run.trajectory.compartment(compartment),
            label=_kappa_label(run.kappa),
        )
    ax.set_xlabel("time")
    ax.set_ylabel(f"{_COMPARTMENT_LABELS[compartment]} fraction")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_model_compare(runs: list[tuple[str, Trajectory]], path: Path) -> None:
    """Infected and recovered curves for each model variant."""
    fig, (ax_i, ax_r) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    for label, traj in runs:
        ax_i.plot(traj.times, traj.compartment("I"), label=label)
        ax_r.plot(traj.times, traj.compartment("R"), label=label)
    ax_i.set_ylabel("infected fraction")
    ax_r.set_ylabel("recovered fraction")
    ax_r.set_xlabel("time")
    ax_i.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_peak_summary(records: list[SweepRecord], path: Path) -> None:
    """Peak infection value and peak time against the confidence cap.

    The uncapped endpoint, if present, is annotated rather than drawn
    (it has no finite x position).
    """
    finite = [rec for rec in records if math.isfinite(rec.swept)]
    uncapped = [rec for rec in records if math.isinf(rec.swept)]
    kappas = [rec.swept for rec in finite]
    fig, (ax_v, ax_t) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax_v.plot(kappas, [rec.observables["peak_I"] for rec in finite], marker=".")
    ax_t.plot(kappas, [rec.observables["peak_t"] for rec in finite], marker=".")
    if uncapped:
        ax_v.axhline(
            uncapped[0].observables["peak_I"],
            linestyle="--",
            color="gray",
            label="uncapped roll-out",
        )
        ax_v.legend()
    ax_v.set_ylabel("peak infected fraction")
    ax_t.set_ylabel("peak time")
    ax_t.set_xlabel("vaccine confidence κ")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_threshold(records: list[SweepRecord], path: Path) -> None:
    """Eradication time against the stability threshold (-10 = not reached)."""
    x = [rec.swept for rec in records]
    y = [rec.observables["eradication_time"] for rec in records]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(x, y, marker=".")
    ax.axhline(NOT_REACHED_SENTINEL, linestyle=":", color="gray")
    ax.set_xlabel("(1 - κ) · β/γ")
    ax.set_ylabel("eradication time")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
