from pathlib import Path

from dtis.core.utils.files import format_float, write_csv

from .types import TraceRow

TRACE_COLUMNS = ("i", "best_true_phi", "S_i", "fw_calls", "elapsed_s")


def write_trace_csv(
    path: Path, trace: list[TraceRow], header: str | None = None
) -> Path:
    rows = (
        (
            row.iteration,
            format_float(row.best_true_phi),
            row.training_size,
            row.fw_calls,
            f"{row.elapsed_s:.3f}",
        )
        for row in trace
    )
    return write_csv(path, [header] if header else [], TRACE_COLUMNS, rows)
