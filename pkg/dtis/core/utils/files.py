import csv
import hashlib
import io
import logging
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path

logger = logging.getLogger(__name__)


def format_float(value: float) -> str:
    """Round-trippable text for a float (17 significant digits)."""
    return f"{value:.17g}"


def config_hash(values: Mapping[str, object]) -> str:
    """
    Hashes a resolved configuration.

    Args:
        values (Mapping[str, object]): resolved key/value pairs. Values are
        rendered with str(), so callers normalize them first.

    Returns:
        str: first 12 hex digits of the SHA-256 of the sorted key=value
        lines.
    """
    lines = "\n".join(f"{key}={values[key]}" for key in sorted(values))
    return hashlib.sha256(lines.encode("utf-8")).hexdigest()[:12]


def provenance_header(hash_value: str, seed: int) -> str:
    return f"# dtis config_hash={hash_value} seed={seed}"


def csv_line(cells: Iterable[object]) -> str:
    """Renders one CSV record without its line terminator."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="").writerow(cells)
    return buffer.getvalue()


def parse_csv_line(text: str) -> list[str]:
    return next(csv.reader([text]), [])


def write_csv(
    path: Path,
    comments: Iterable[str],
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
) -> Path:
    """
    Writes leading '#' comment lines, a column header and the rows, with
    Unix newlines, creating parent directories.

    Returns:
        Path: the path that was written.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        for comment in comments:
            f.write(f"{comment}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    logger.info(f"Wrote {path}")
    return path


def read_lines(path: Path) -> list[str]:
    with path.open(encoding="utf-8") as f:
        return [line.rstrip("\r\n") for line in f]


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    """
    Reads a CSV file with leading '#' comment lines.

    Returns:
        tuple[list[str], list[list[str]]]: the comment lines and the
        records, header first; blank records are dropped.
    """
    with path.open(encoding="utf-8", newline="") as f:
        lines = f.readlines()
    index = 0
    while index < len(lines) and lines[index].startswith("#"):
        index += 1
    comments = [line.rstrip("\r\n") for line in lines[:index]]
    records = [row for row in csv.reader(lines[index:]) if row]
    return comments, records
