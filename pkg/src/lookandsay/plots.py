"""Figure rendering for the report subcommands.

Each function writes one matplotlib figure to a file path; figures sit
alongside the delimited output, they never replace it.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluate import EvalReport, ProbeReport


def growth_figure(lengths: list[int], path: str | Path) -> None:
    """Term length per step (log scale) with the step-to-step ratio below."""
    steps = range(len(lengths))
    ratios = [b / a for a, b in zip(lengths, lengths[1:])]
    fig, (ax_len, ax_ratio) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, height_ratios=[2, 1]
    )
    ax_len.semilogy(steps, lengths, marker="o", ms=2.5, lw=1, color="tab:blue")
    ax_len.set_ylabel("term length (digits)")
    ax_len.grid(True, which="both", alpha=0.3)
    if ratios:
        ax_ratio.plot(range(1, len(lengths)), ratios, lw=1, color="tab:orange")
        ax_ratio.axhline(ratios[-1], color="grey", ls="--", lw=0.8)
        ax_ratio.annotate(
            f"{ratios[-1]:.4f}",
            xy=(len(lengths) - 1, ratios[-1]),
            xytext=(-4, 4),
            textcoords="offset points",
            ha="right",
            fontsize=8,
            color="grey",
        )
    ax_ratio.set_xlabel("step")
    ax_ratio.set_ylabel("length ratio")
    ax_ratio.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def score_figure(report: EvalReport, path: str | Path) -> None:
    """Examples and errors per input length, with the headline error count."""
    lengths = list(report.per_length)
    totals = [report.per_length[l][0] for l in lengths]
    errors = [report.per_length[l][1] for l in lengths]
    fig, (ax_n, ax_rate) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, height_ratios=[1, 1]
    )
    ax_n.bar(lengths, totals, color="tab:blue", alpha=0.7, label="examples")
    ax_n.bar(lengths, errors, color="tab:red", label="errors")
    ax_n.set_ylabel("count")
    ax_n.legend(frameon=False)
    ax_n.set_title(
        f"{report.errors} / {report.total} errors, "
        f"token accuracy {report.token_accuracy:.4f}"
    )
    rates = [e / t if t else 0.0 for t, e in zip(totals, errors)]
    ax_rate.bar(lengths, rates, color="tab:red", alpha=0.8)
    ax_rate.set_xlabel("input length")
    ax_rate.set_ylabel("error rate")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def probe_figure(report: ProbeReport, path: str | Path) -> None:
    """Verdict per probe step: green where the rewrite matched, red where not."""
    steps = [t.step for t in report.terms]
    colors = ["tab:green" if t.ok else "tab:red" for t in report.terms]
    heights = [len(t.gold) for t in report.terms]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(steps, heights, color=colors)
    ax.set_yscale("log")
    ax.set_xlabel("step")
    ax.set_ylabel("gold term length")
    if report.first_failure_step is None:
        ax.set_title(f"{len(report.terms)} steps, all correct")
    else:
        ax.set_title(f"first failure at step {report.first_failure_step}")
        ax.axvline(report.first_failure_step, color="tab:red", ls="--", lw=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
