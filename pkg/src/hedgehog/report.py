"""Delimited and graphical output for survey reports.

The CSV carries one row per surveyed cubic; the figure is a bar chart
of per-stage pass counts rendered to a file (Agg backend, no display).
"""

import csv

STAGES = ("condition1", "condition2", "condition3", "hedgehog", "fractal")


def write_survey_csv(report, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "cubic", "verdict", *STAGES])
        for r in report.results:
            writer.writerow([r.index, r.cubic, r.verdict,
                             *(int(bool(r.stages.get(s))) for s in STAGES)])


def render_survey_figure(report, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = report.stage_pass_counts()
    labels = [*STAGES, "certified"]
    values = [counts[k] for k in labels]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(labels)), values, color="#4878a8")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("cubics passing")
    ax.set_ylim(0, max(len(report.results), 1))
    ax.set_title(f"survey: seed={report.seed} count={len(report.results)} "
                 f"coeffs in [{report.coeff_range[0]}, {report.coeff_range[1]}]")
    ax.axhline(len(report.results), color="#888888", linewidth=0.8,
               linestyle="--")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
