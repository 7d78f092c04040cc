from pathlib import Path

import numpy as np

from dtis.core.utils.files import format_float, write_csv

from .types import Landscape

LANDSCAPE_COLUMNS = ("a", "b", "phi")
CLAMP_NOTE = "# DoFs outside the bounds are clamped to them before decoding"


def write_landscape_csv(
    path: Path, result: Landscape, header: str | None = None
) -> Path:
    """One row per lattice point, a-major; failed cells have an empty phi."""
    comments = [header] if header else []
    comments += [CLAMP_NOTE, f"# clamped={result.clamped}"]
    rows = []
    for i, a in enumerate(result.a):
        for j, b in enumerate(result.b):
            phi = result.phi[i, j]
            value = "" if np.isnan(phi) else format_float(phi)
            rows.append((format_float(a), format_float(b), value))
    return write_csv(path, comments, LANDSCAPE_COLUMNS, rows)
