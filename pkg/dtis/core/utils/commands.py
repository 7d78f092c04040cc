from prettytable import PrettyTable

from dtis.cli.io import UNAVAILABLE
from dtis.cli.types import AggregateRow, RunSummary


def _cell(value) -> str:
    if value is None:
        return UNAVAILABLE
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def show_summary_table(summary: RunSummary) -> PrettyTable:
    """
    Builds a two-column table with the figures of one inversion.

    Returns:
        PrettyTable: one row per summary field.
    """
    table = PrettyTable()
    table.field_names = ["Metric", "Value"]
    table.align = "l"
    for name, value in vars(summary).items():
        table.add_row([name, _cell(value)])
    return table


def show_aggregate_table(rows: list[AggregateRow]) -> PrettyTable:
    """
    Builds a table with the median and quartiles of each batch metric.

    Returns:
        PrettyTable: one row per metric.
    """
    table = PrettyTable()
    table.field_names = ["Metric", "Median", "Q1", "Q3", "Runs"]
    for row in rows:
        table.add_row(
            [
                row.metric,
                _cell(row.median),
                _cell(row.q1),
                _cell(row.q3),
                row.n,
            ]
        )
    return table
