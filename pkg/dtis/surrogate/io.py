from pathlib import Path

from dtis.core.utils.files import csv_line, format_float, write_csv

from .types import GpModel


def _formatted(values) -> list[str]:
    return [format_float(value) for value in values]


def write_model_csv(
    path: Path, model: GpModel, header: str | None = None
) -> Path:
    """
    Dumps a trained model and its training set for offline inspection.

    The dump is write-only; a model is rebuilt by training on the listed
    samples with the listed hyperparameters.
    """
    training = model.training
    columns = ["s", "phi"] + [f"xi_{k}" for k in range(1, training.k + 1)]
    comments = [header] if header else []
    comments += [
        f"# gamma={csv_line(_formatted(model.hyperparameters.gamma))}",
        f"# beta={csv_line(_formatted(model.hyperparameters.beta))}",
        f"# chi={format_float(model.chi)}",
        f"# nu2={format_float(model.nu2)}",
        f"# S={training.size}",
    ]
    rows = (
        [s, format_float(phi)] + _formatted(xi)
        for s, (xi, phi) in enumerate(
            zip(training.inputs, training.outputs), start=1
        )
    )
    return write_csv(path, comments, columns, rows)
