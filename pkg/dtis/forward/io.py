from pathlib import Path

import numpy as np

from dtis.core.utils.files import (
    csv_line,
    format_float,
    parse_csv_line,
    read_csv,
    write_csv,
)

from .exceptions import DatasetFormatError
from .types import Grid, MeasurementSetup, ScatteringDataset

DESCRIPTOR_KEYS = "# L_D,n_side_fw,V,M,rho_O,snr_db,seed"
SAMPLE_COLUMNS = ["v", "m", "x_m", "y_m", "re_s", "im_s"]

# Probe positions in a file may differ from the nominal circle by rounding.
POSITION_TOLERANCE = 1e-6


def _optional(value: float | int | None) -> str:
    if value is None:
        return ""
    return str(value) if isinstance(value, int) else format_float(value)


def write_dataset_csv(
    path: Path, dataset: ScatteringDataset, header: str | None = None
) -> Path:
    setup = dataset.setup
    descriptor = [
        format_float(dataset.grid.side),
        dataset.grid.n_side,
        setup.views,
        setup.probes,
        format_float(setup.radius),
        _optional(dataset.snr_db),
        _optional(dataset.seed),
    ]
    comments = [header] if header else []
    comments += [DESCRIPTOR_KEYS, f"# {csv_line(descriptor)}"]
    rows = []
    for v in range(setup.views):
        for m, (x, y) in enumerate(setup.probe_positions):
            sample = dataset.scattered[m, v]
            values = (x, y, sample.real, sample.imag)
            rows.append(
                [v + 1, m + 1] + [format_float(value) for value in values]
            )
    return write_csv(path, comments, SAMPLE_COLUMNS, rows)


def _descriptor(comments: list[str], path: Path) -> list[str]:
    try:
        index = comments.index(DESCRIPTOR_KEYS)
        values = parse_csv_line(comments[index + 1].removeprefix("#").strip())
    except (ValueError, IndexError) as e:
        raise DatasetFormatError(
            f"{path}: missing '{DESCRIPTOR_KEYS}' descriptor"
        ) from e
    if len(values) != 7:
        raise DatasetFormatError(
            f"{path}: descriptor needs 7 values, got {len(values)}"
        )
    return values


def read_dataset_csv(path: Path) -> ScatteringDataset:
    """
    Reads a dataset in the canonical CSV layout.

    Samples must cover every (view, probe) pair exactly once and the probe
    positions must sit on the circle described by the descriptor line.

    Raises:
        DatasetFormatError: if the file does not follow the layout.
    """
    comments, records = read_csv(path)
    descriptor = _descriptor(comments, path)
    try:
        side, n_side, views, probes, radius = (
            float(descriptor[0]),
            int(descriptor[1]),
            int(descriptor[2]),
            int(descriptor[3]),
            float(descriptor[4]),
        )
        snr_db = float(descriptor[5]) if descriptor[5] else None
        seed = int(descriptor[6]) if descriptor[6] else None
        grid = Grid(side=side, n_side=n_side)
        setup = MeasurementSetup(views=views, probes=probes, radius=radius)
    except ValueError as e:
        raise DatasetFormatError(f"{path}: bad descriptor: {e}") from e

    if not records or records[0] != SAMPLE_COLUMNS:
        raise DatasetFormatError(
            f"{path}: expected header {','.join(SAMPLE_COLUMNS)}"
        )
    scattered = np.full((probes, views), np.nan, dtype=complex)
    seen = np.zeros((probes, views), dtype=bool)
    for number, cells in enumerate(records[1:], start=1):
        try:
            v, m = int(cells[0]), int(cells[1])
            x, y, re_s, im_s = (float(cell) for cell in cells[2:])
        except (ValueError, IndexError) as e:
            raise DatasetFormatError(f"{path} row {number}: {e}") from e
        if not (1 <= v <= views and 1 <= m <= probes):
            raise DatasetFormatError(
                f"{path} row {number}: sample ({v}, {m}) out of range"
            )
        if seen[m - 1, v - 1]:
            raise DatasetFormatError(
                f"{path} row {number}: duplicate sample ({v}, {m})"
            )
        nominal = setup.probe_positions[m - 1]
        if np.hypot(x - nominal[0], y - nominal[1]) > POSITION_TOLERANCE:
            raise DatasetFormatError(
                f"{path} row {number}: probe {m} is off its nominal position"
            )
        seen[m - 1, v - 1] = True
        scattered[m - 1, v - 1] = complex(re_s, im_s)

    if not seen.all():
        raise DatasetFormatError(
            f"{path}: {np.count_nonzero(~seen)} samples are missing"
        )
    try:
        return ScatteringDataset(
            setup=setup,
            grid=grid,
            scattered=scattered,
            snr_db=snr_db,
            seed=seed,
        )
    except ValueError as e:
        raise DatasetFormatError(f"{path}: {e}") from e
