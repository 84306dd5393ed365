# ---------------------------------------------------------------
# chart_builder.py
#
# Purpose:
#   Exports a sweep to an Excel workbook: the summary sheet, the
#   per-point sheet and a native line chart of bound vs oracle
#   against n for each (k, r, L) group.
#
# Requirements:
#   - Input: rows DataFrame from run_sweep, summary from summarize_sweep.
#   - Libraries: pandas, xlsxwriter.
#
# Output:
#   - Workbook path; sheets "Summary", "Points" and "ChartData".
#
# Notes:
#   - Non-numeric values (INFEASIBLE, open cases) are left blank in
#     ChartData so the chart shows gaps.
#   - Only the first CHART_MAX_GROUPS groups are charted.
# ---------------------------------------------------------------

# scripts/chart_builder.py

import logging
from pathlib import Path

import pandas as pd

from config.settings import CHART_MAX_GROUPS

logger = logging.getLogger(__name__)


def _group_label(k, r, L) -> str:
    return f"k={k} r={r} L={{{L}}}"


def chart_frame(df: pd.DataFrame) -> pd.DataFrame:
    """Wide table indexed by n: one bound and one oracle column per group."""
    numeric = df.assign(
        bound=pd.to_numeric(df["bound"], errors="coerce"),
        oracle=pd.to_numeric(df["oracle"], errors="coerce"),
    )
    wide = pd.DataFrame({"n": sorted(numeric["n"].unique())})
    for (k, r, L), group in list(numeric.groupby(["k", "r", "L"], sort=True))[:CHART_MAX_GROUPS]:
        label = _group_label(k, r, L)
        per_n = group.set_index("n")
        wide[f"{label} bound"] = wide["n"].map(per_n["bound"])
        wide[f"{label} oracle"] = wide["n"].map(per_n["oracle"])
    return wide


def export_sweep_to_excel(df: pd.DataFrame, summary: pd.DataFrame, filename) -> Path:
    """
    Writes the sweep workbook with a line chart on the Summary sheet.
    - Oracle: solid line with markers
    - Bound: dashed line
    """
    path = Path(filename)
    path.parent.mkdir(parents=True, exist_ok=True)
    wide = chart_frame(df)

    with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
        summary.to_excel(writer, index=False, sheet_name="Summary")
        df.to_excel(writer, index=False, sheet_name="Points")
        wide.to_excel(writer, index=False, sheet_name="ChartData")
        workbook = writer.book
        worksheet = writer.sheets["Summary"]

        chart = workbook.add_chart({"type": "line"})
        rows = len(wide)
        for col, name in enumerate(wide.columns[1:], start=1):
            series = {
                "name": name,
                "categories": ["ChartData", 1, 0, rows, 0],
                "values": ["ChartData", 1, col, rows, col],
            }
            if name.endswith("bound"):
                series["line"] = {"dash_type": "dash"}
            else:
                series["marker"] = {"type": "circle", "size": 5}
            chart.add_series(series)

        chart.set_title({"name": f"{df['mode'].iloc[0]} bound vs oracle" if not df.empty else "Sweep"})
        chart.set_x_axis({"name": "n"})
        chart.set_y_axis({"name": "max total size"})
        chart.set_legend({"position": "bottom"})
        chart.show_blanks_as("gap")

        worksheet.insert_chart(len(summary) + 3, 0, chart)

    logger.info(f"sweep workbook exported to: {path}")
    return path
