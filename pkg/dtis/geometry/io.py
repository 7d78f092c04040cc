import re
from pathlib import Path

import numpy as np
from PIL import Image

from dtis.core.exceptions import FileFormatError
from dtis.core.utils.files import format_float, read_csv, write_csv
from dtis.forward.types import Grid

from .types import ContrastMap, DofVector, Layout

CONTRAST_COLUMNS = ["x", "y", "re_tau", "im_tau"]
DOF_COLUMNS = ["k", "value", "lower", "upper"]

GRID_LINE = re.compile(r"^# L_D=(?P<side>\S+) n_side=(?P<n_side>\d+)$")
LAYOUT_LINE = re.compile(r"^# layout=(?P<layout>\w+) q=(?P<q>\d+)$")


def _match_comment(
    comments: list[str], pattern: re.Pattern, path: Path
) -> re.Match:
    for line in comments:
        if match := pattern.match(line):
            return match
    raise FileFormatError(f"{path}: missing '{pattern.pattern}' line")


def _numeric_rows(
    records: list[list[str]], columns: list[str], path: Path
) -> np.ndarray:
    if not records or records[0] != columns:
        raise FileFormatError(f"{path}: expected header {','.join(columns)}")
    try:
        return np.array(
            [[float(cell) for cell in record] for record in records[1:]]
        )
    except ValueError as e:
        raise FileFormatError(f"{path}: {e}") from e


def write_contrast_csv(
    path: Path, contrast: ContrastMap, header: str | None = None
) -> Path:
    grid = contrast.grid
    comments = [header] if header else []
    comments.append(f"# L_D={format_float(grid.side)} n_side={grid.n_side}")
    rows = (
        [format_float(value) for value in (x, y, tau.real, tau.imag)]
        for (x, y), tau in zip(grid.centers, contrast.values)
    )
    return write_csv(path, comments, CONTRAST_COLUMNS, rows)


def read_contrast_csv(path: Path) -> ContrastMap:
    comments, records = read_csv(path)
    match = _match_comment(comments, GRID_LINE, path)
    grid = Grid(side=float(match["side"]), n_side=int(match["n_side"]))
    rows = _numeric_rows(records, CONTRAST_COLUMNS, path)
    if rows.shape != (grid.n, 4):
        raise FileFormatError(
            f"{path}: expected {grid.n} rows of 4 columns, got {rows.shape}"
        )
    return ContrastMap(grid=grid, values=rows[:, 2] + 1j * rows[:, 3])


def write_contrast_pgm(path: Path, contrast: ContrastMap) -> Path:
    """
    Writes |tau| as an 8-bit grayscale PGM scaled to [0, max |tau|].

    Image rows are flipped so that +y points up.
    """
    magnitude = np.abs(contrast.as_image())
    peak = magnitude.max()
    scaled = magnitude / peak * 255 if peak > 0 else magnitude
    pixels = np.ascontiguousarray(np.flipud(np.rint(scaled)), np.uint8)
    path.parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(pixels).save(path, format="PPM")
    return path


def write_dof_csv(
    path: Path, dof: DofVector, header: str | None = None
) -> Path:
    comments = [header] if header else []
    comments.append(f"# layout={dof.layout} q={dof.q}")
    rows = (
        [k, format_float(value), format_float(lower), format_float(upper)]
        for k, (value, lower, upper) in enumerate(
            zip(dof.values, dof.lower, dof.upper), start=1
        )
    )
    return write_csv(path, comments, DOF_COLUMNS, rows)


def read_dof_csv(path: Path) -> DofVector:
    comments, records = read_csv(path)
    match = _match_comment(comments, LAYOUT_LINE, path)
    try:
        layout = Layout(match["layout"])
    except ValueError as e:
        raise FileFormatError(f"{path}: {e}") from e
    rows = _numeric_rows(records, DOF_COLUMNS, path)
    if rows.ndim != 2 or rows.shape[1] != 4:
        raise FileFormatError(f"{path}: expected 4 columns per row")
    return DofVector(
        layout=layout,
        q=int(match["q"]),
        values=rows[:, 1],
        lower=rows[:, 2],
        upper=rows[:, 3],
    )
