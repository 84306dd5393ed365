# scripts/printer.py

import pandas as pd

SWEEP_TABLE = [
    ("n", 6), ("k", 4), ("r", 4), ("L", 12), ("regime", 12),
    ("bound", 12), ("oracle", 12), ("equal", 8), ("runtime_ms", 12),
]
SUMMARY_TABLE = [
    ("k", 4), ("r", 4), ("L", 12), ("points", 8), ("equal", 8),
    ("mismatched", 12), ("asymptotic_gaps", 16), ("empirical_threshold", 20),
]


def _cell(value) -> str:
    if isinstance(value, float):
        if value != value:
            return "-"
        return f"{value:.2f}"
    if value is None or value is pd.NA:
        return "-"
    return str(value)


def format_centered_table(df: pd.DataFrame, layout, title: str | None = None) -> str:
    header = " | ".join(f"{col:^{w}}" for col, w in layout)
    lines = []
    if title:
        lines += ["", title, ""]
    lines += [header, "-" * len(header)]
    for _, row in df.iterrows():
        lines.append(" | ".join(f"{_cell(row.get(col)):^{w}}" for col, w in layout))
    return "\n".join(lines) + "\n"


def print_sweep(df: pd.DataFrame, summary: pd.DataFrame) -> None:
    mode = df["mode"].iloc[0] if not df.empty else ""
    print(format_centered_table(df, SWEEP_TABLE, f"{mode} sweep"), end="")
    print(format_centered_table(summary, SUMMARY_TABLE, "Summary"), end="")
