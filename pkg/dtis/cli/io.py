from dataclasses import fields
from pathlib import Path

from dtis.core.exceptions import FileFormatError
from dtis.core.utils.files import format_float, read_csv, write_csv

from .types import AggregateRow, RunSummary

SUMMARY_COLUMNS = ["key", "value"]
AGGREGATE_COLUMNS = ["metric", "median", "q1", "q3", "n"]
UNAVAILABLE = "unavailable"

TEXT_FIELDS = {"scenario", "mode", "config_hash"}
INTEGER_FIELDS = {"seed", "fw_calls", "training_size"}


def _render(value) -> str:
    if value is None:
        return UNAVAILABLE
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_summary_csv(
    path: Path, summary: RunSummary, header: str | None = None
) -> Path:
    rows = []
    for item in fields(summary):
        value = getattr(summary, item.name)
        text = f"{value:.3f}" if item.name == "elapsed_s" else _render(value)
        rows.append((item.name, text))
    comments = [header] if header else []
    return write_csv(path, comments, SUMMARY_COLUMNS, rows)


def _parse(name: str, text: str):
    if name in TEXT_FIELDS:
        return text
    if text == UNAVAILABLE:
        return None
    return int(text) if name in INTEGER_FIELDS else float(text)


def read_summary_csv(path: Path) -> RunSummary:
    """
    Raises:
        FileFormatError: if the file is not a run summary.
    """
    _, records = read_csv(path)
    if not records or records[0] != SUMMARY_COLUMNS:
        raise FileFormatError(f"{path}: expected header key,value")
    names = {item.name for item in fields(RunSummary)}
    values = {}
    for record in records[1:]:
        if len(record) != 2:
            raise FileFormatError(f"{path}: expected key,value: {record}")
        key, text = record
        if key not in names:
            raise FileFormatError(f"{path}: unknown summary key '{key}'")
        try:
            values[key] = _parse(key, text)
        except ValueError as e:
            raise FileFormatError(f"{path}: bad value for {key}: {e}") from e
    try:
        return RunSummary(**values)
    except TypeError as e:
        raise FileFormatError(f"{path}: {e}") from e


def write_aggregate_csv(
    path: Path, rows: list[AggregateRow], header: str | None = None
) -> Path:
    """One row per metric; statistics of metrics never computed are empty."""
    records = []
    for row in rows:
        stats = (row.median, row.q1, row.q3)
        cells = [
            "" if value is None else format_float(value) for value in stats
        ]
        records.append([row.metric, *cells, row.n])
    comments = [header] if header else []
    return write_csv(path, comments, AGGREGATE_COLUMNS, records)
