# ---------------------------------------------------------------
# sweep_chart.py
#
# Purpose:
#   PNG chart of a sweep: the oracle maximum and the catalog bound
#   against n, one colour per (k, r, L) group.
#
# Requirements:
#   - Input: rows DataFrame from data_processor.run_sweep.
#   - Libraries: matplotlib (Agg backend).
#
# Output:
#   - Saves the chart image and returns its path.
# ---------------------------------------------------------------

# scripts/charts/sweep_chart.py

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from scripts.chart_builder import chart_frame  # noqa: E402


def build_sweep_chart(df, output_path) -> Path:
    """
    Oracle as markers on a solid line, bound as a dashed line of the
    same colour.
    """
    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    wide = chart_frame(df)

    fig, ax = plt.subplots(figsize=(10, 6))
    oracle_cols = [c for c in wide.columns if c.endswith(" oracle")]
    for i, col in enumerate(oracle_cols):
        label = col[: -len(" oracle")]
        colour = f"C{i % 10}"
        ax.plot(wide["n"], wide[col], marker="o", color=colour, label=f"{label} oracle")
        ax.plot(wide["n"], wide[f"{label} bound"], linestyle="--", color=colour, alpha=0.7)

    mode = df["mode"].iloc[0] if not df.empty else "sweep"
    ax.set_title(f"{mode}: exact maximum (markers) vs bound (dashed)")
    ax.set_xlabel("n")
    ax.set_ylabel("max total size")
    ax.grid(True, linestyle="--", alpha=0.5)
    if oracle_cols:
        ax.legend(fontsize=8)

    plt.tight_layout()
    plt.savefig(path)
    plt.close(fig)

    return path
