"""Table emission for the simulation and bootstrap commands."""

from typing import List, Sequence, Tuple

COLUMNS = ("n", "theta0", "mean_mele", "mean_pmele", "n_bias_mele",
           "n_bias_pmele", "mse_mele", "mse_pmele", "mc_se_mele", "failures")


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.6g}"


def mc_row(cell) -> Tuple:
    return (cell.n, cell.theta0, cell.mean_mele, cell.mean_pmele,
            cell.n_bias_mele, cell.n_bias_pmele, cell.mse_mele,
            cell.mse_pmele, cell.mc_se_mele, cell.replication_failures)


def study_row(row) -> Tuple:
    return (row.n, row.theta_ref, row.mean_mele, row.mean_pmele,
            row.n * row.mean_bias_mele, row.n * row.mean_bias_pmele,
            row.mse_mele, row.mse_pmele, row.mc_se_mele,
            row.replication_failures)


def render(sections: Sequence[Tuple[str, Sequence[Tuple]]],
           fmt: str = "csv",
           provenance: Sequence[str] = ()) -> str:
    """Render labeled row blocks as CSV or a markdown table.

    CSV: comma-delimited, LF endings, '#'-prefixed comments for provenance
    and section labels, one header row per section block.
    """
    lines: List[str] = [f"# {p}" for p in provenance]
    if fmt == "csv":
        for label, rows in sections:
            lines.append(f"# scenario: {label}")
            lines.append(",".join(COLUMNS))
            for row in rows:
                lines.append(",".join(_fmt(v) for v in row))
    elif fmt == "markdown":
        for label, rows in sections:
            lines.append(f"**{label}**")
            lines.append("")
            lines.append("| " + " | ".join(COLUMNS) + " |")
            lines.append("|" + "|".join(["---"] * len(COLUMNS)) + "|")
            for row in rows:
                lines.append("| " + " | ".join(_fmt(v) for v in row) + " |")
            lines.append("")
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    return "\n".join(lines) + "\n"
