"""Report figures, rendered headless to PNG next to the JSON/CSV output.

Nothing here feeds back into the numbers: figures are a presentation of an
already-final report object.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .evaluation import ComparisonReport, TopNResult, TOP_N_LEVELS

SIDE_A_COLOR = "#1f77b4"
SIDE_B_COLOR = "#ff7f0e"


def plot_coverage(
    report: ComparisonReport,
    path: str | Path,
    labels: tuple[str, str] = ("engine A", "engine B"),
) -> None:
    """Covered-seed percentages per engine plus their union."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = [labels[0], labels[1], "combined"]
    values = [
        100.0 * report.coverage_a,
        100.0 * report.coverage_b,
        100.0 * report.union_coverage,
    ]
    bars = ax.bar(names, values, color=[SIDE_A_COLOR, SIDE_B_COLOR, "#2ca02c"])
    for bar, value in zip(bars, values):
        ax.annotate(
            f"{value:.1f}%",
            (bar.get_x() + bar.get_width() / 2, value),
            ha="center",
            va="bottom",
            fontsize=9,
        )
    ax.set_ylabel("seeds with recommendations (%)")
    ax.set_ylim(0, max(values + [1.0]) * 1.2)
    ax.set_title(f"Recommendation coverage over {report.seeds_total} seeds")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_volume(
    report: ComparisonReport,
    path: str | Path,
    labels: tuple[str, str] = ("engine A", "engine B"),
) -> None:
    """Share of the total recommendation volume produced by each engine."""
    total = report.recs_a_total + report.recs_b_total
    fig, ax = plt.subplots(figsize=(5, 4))
    if total == 0:
        ax.text(0.5, 0.5, "no recommendations", ha="center", va="center")
        ax.set_axis_off()
    else:
        ax.pie(
            [report.recs_a_total, report.recs_b_total],
            labels=[
                f"{labels[0]} ({report.recs_a_total})",
                f"{labels[1]} ({report.recs_b_total})",
            ],
            colors=[SIDE_A_COLOR, SIDE_B_COLOR],
            autopct="%.0f%%",
            startangle=90,
        )
        ax.set_title("Recommendation volume")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_diversity(
    report: ComparisonReport,
    path: str | Path,
    labels: tuple[str, str] = ("engine A", "engine B"),
) -> None:
    """Per-seed diversity outcomes on jointly covered seeds.

    The annotation under the title carries the macro means, which is the
    number the winner counts summarize.
    """
    fig, ax = plt.subplots(figsize=(7, 4))
    names = [
        f"{labels[0]}\nmore diverse",
        f"{labels[1]}\nmore diverse",
        "tie",
        "same journal\n(both sides)",
        "incomparable",
    ]
    values = [
        report.diversity_wins_a,
        report.diversity_wins_b,
        report.diversity_ties,
        report.zero_diversity_both,
        report.diversity_incomparable,
    ]
    ax.bar(
        names,
        values,
        color=[SIDE_A_COLOR, SIDE_B_COLOR, "#7f7f7f", "#bcbd22", "#d62728"],
    )
    for pos, value in enumerate(values):
        ax.annotate(str(value), (pos, value), ha="center", va="bottom", fontsize=9)
    mean_a = report.mean_seed_similarity_a
    mean_b = report.mean_seed_similarity_b
    subtitle = "mean seed-journal similarity: " + ", ".join(
        f"{label} {mean:.3f}" if mean is not None else f"{label} n/a"
        for label, mean in ((labels[0], mean_a), (labels[1], mean_b))
    )
    ax.set_ylabel("joint seeds")
    ax.set_title(f"Journal diversity outcomes\n{subtitle}", fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_topn_hits(result: TopNResult, path: str | Path) -> None:
    """Hold-out recovery rate at each Top-N level."""
    fig, ax = plt.subplots(figsize=(5, 4))
    names = [f"Top-{n}" for n in TOP_N_LEVELS]
    values = [100.0 * result.hit_rate(n) for n in TOP_N_LEVELS]
    bars = ax.bar(names, values, color=SIDE_A_COLOR)
    for bar, value in zip(bars, values):
        ax.annotate(
            f"{value:.1f}%",
            (bar.get_x() + bar.get_width() / 2, value),
            ha="center",
            va="bottom",
            fontsize=9,
        )
    ax.set_ylabel("removed reference recovered (%)")
    ax.set_ylim(0, max(values + [1.0]) * 1.2)
    ax.set_title(
        f"Hold-out accuracy ({result.trials} trials, {result.skipped} seeds skipped)"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_comparison_figures(
    report: ComparisonReport,
    out_dir: str | Path,
    labels: tuple[str, str] = ("engine A", "engine B"),
) -> list[Path]:
    out = Path(out_dir)
    targets = [
        (out / "coverage.png", plot_coverage),
        (out / "volume.png", plot_volume),
        (out / "diversity.png", plot_diversity),
    ]
    for path, renderer in targets:
        renderer(report, path, labels)
    return [path for path, _ in targets]
