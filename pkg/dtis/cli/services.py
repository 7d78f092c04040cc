import logging
import math
from collections.abc import Iterable
from pathlib import Path

import numpy as np
from django.conf import settings

from dtis.core.utils.files import provenance_header
from dtis.forward.io import read_dataset_csv, write_dataset_csv
from dtis.forward.services import synthesize_dataset
from dtis.forward.types import ScatteringDataset
from dtis.geometry.io import (
    read_dof_csv,
    write_contrast_csv,
    write_contrast_pgm,
    write_dof_csv,
)
from dtis.geometry.services import decode_to_contrast
from dtis.metrics.exceptions import OracleError, UndefinedMetricError
from dtis.metrics.io import write_landscape_csv
from dtis.metrics.services import (
    CostOracle,
    error_index,
    landscape,
    prediction_error_eta,
    time_saving,
)
from dtis.metrics.types import Landscape, LandscapeRequest
from dtis.optimizer.io import write_trace_csv
from dtis.optimizer.services import run
from dtis.optimizer.types import InversionConfig, InversionResult, Mode
from dtis.surrogate.io import write_model_csv
from dtis.surrogate.types import GpModel

from .config import RunConfig
from .exceptions import ConfigurationError
from .io import read_summary_csv, write_aggregate_csv, write_summary_csv
from .tasks import enqueue_inversion, wait_for_jobs
from .types import AGGREGATED_METRICS, AggregateRow, RunSummary

logger = logging.getLogger(__name__)

DATASET_FILE = "dataset.csv"
TRUTH_FILE = "truth.csv"
CONTRAST_FILE = "contrast.csv"
CONTRAST_IMAGE = "contrast.pgm"
SOLUTION_FILE = "solution.csv"
TRACE_FILE = "trace.csv"
MODEL_FILE = "model.csv"
SUMMARY_FILE = "summary.csv"
LANDSCAPE_FILE = "landscape.csv"
AGGREGATE_FILE = "aggregate.csv"


def synth(config: RunConfig, out_dir: Path) -> tuple[Path, Path]:
    """
    Synthesizes the scattered field of the configured scene.

    The data are computed on the synthesis grid and, when snr_db is set,
    corrupted with noise drawn from the config seed.

    Args:
        config (RunConfig): scenario, grids, setup and noise.
        out_dir (Path): directory receiving the files.

    Raises:
        InverseCrimeError: if both grids match and that is not allowed.
        DofBoundsError: if the scene does not fit the DoF bounds.

    Returns:
        tuple[Path, Path]: the dataset CSV and the reference DoF file.
    """
    if config.scenario_spec.measured:
        logger.warning(
            f"{config.scenario} is a measured scenario; the synthetic "
            f"stand-in only exercises the ingestion path"
        )
    scene = config.scene()
    dataset = synthesize_dataset(
        scene,
        config.synthesis_grid,
        config.setup,
        snr_db=config.snr_db,
        rng_seed=config.seed,
        inversion_grid=config.inversion_grid,
        allow_inverse_crime=config.allow_inverse_crime,
        samples_per_segment=config.samples_per_segment,
    )
    header = provenance_header(config.hash, config.seed)
    dataset_path = write_dataset_csv(out_dir / DATASET_FILE, dataset, header)
    truth_path = write_dof_csv(out_dir / TRUTH_FILE, scene, header)
    return dataset_path, truth_path


def _read_dataset(config: RunConfig, path: Path) -> ScatteringDataset:
    dataset = read_dataset_csv(path)
    if not math.isclose(dataset.grid.side, config.side, rel_tol=1e-9):
        raise ConfigurationError(
            f"{path} covers a domain of side {dataset.grid.side}, the "
            f"configuration expects {config.side}"
        )
    return dataset


def _error_index(
    config: RunConfig, truth_path: Path | None, result: InversionResult
) -> float | None:
    if truth_path is None:
        logger.info("No reference scene given; error index unavailable")
        return None
    truth = read_dof_csv(truth_path)
    actual = decode_to_contrast(
        truth, result.contrast.grid, config.samples_per_segment
    )
    return error_index(actual, result.contrast)


def _prediction_error(
    config: RunConfig,
    inversion: InversionConfig,
    dataset: ScatteringDataset,
    result: InversionResult,
) -> float | None:
    if not config.report_eta:
        return None
    if result.model is None:
        logger.info("No surrogate in go mode; prediction error unavailable")
        return None
    oracle = CostOracle(
        dataset,
        config.inversion_grid,
        inversion.layout,
        inversion.q,
        inversion.lower,
        inversion.upper,
        config.samples_per_segment,
        config.allow_inverse_crime,
    )
    try:
        return prediction_error_eta(
            result.final_positions, result.model, oracle
        )
    except (UndefinedMetricError, OracleError) as e:
        logger.warning(f"Prediction error unavailable: {e}")
        return None


def _summarize(
    config: RunConfig,
    seed: int,
    result: InversionResult,
    error: float | None,
    eta: float | None,
) -> RunSummary:
    budget = config.particles * config.go_iterations
    budgeted = None
    if result.mode == Mode.SBD:
        budgeted = time_saving(
            config.particles,
            config.go_iterations,
            config.initial_samples,
            config.iterations,
        )
    return RunSummary(
        scenario=config.scenario,
        mode=str(result.mode),
        seed=seed,
        config_hash=config.hash,
        best_phi=result.best_phi,
        initial_phi=result.initial_phi,
        fw_calls=result.fw_calls,
        training_size=(
            result.training.size if result.training is not None else None
        ),
        elapsed_s=result.elapsed_s,
        error_index=error,
        time_saving=budgeted,
        call_saving=1 - result.fw_calls / budget,
        eta=eta,
    )


def invert(
    config: RunConfig,
    dataset_path: Path,
    out_dir: Path,
    truth_path: Path | None = None,
    seed: int | None = None,
) -> RunSummary:
    """
    Inverts a dataset and writes the result bundle.

    The bundle holds the retrieved contrast (CSV and PGM), the solution
    DoFs, the convergence trace, the surrogate dump in sbd mode and the
    run summary.

    Args:
        config (RunConfig): swarm and grid settings.
        dataset_path (Path): measured or synthetic dataset CSV.
        out_dir (Path): directory receiving the bundle.
        truth_path (Path | None): reference DoF file for the error index.
        seed (int | None): inversion seed; the config seed when None.

    Raises:
        ConfigurationError: if the dataset domain differs from the config.
        InverseCrimeError: if the dataset was made on the inversion grid.
        InitializationError: if the initial training set cannot be built.

    Returns:
        RunSummary: the figures written to the summary file.
    """
    seed = config.seed if seed is None else seed
    out_dir = Path(out_dir)
    truth_path = Path(truth_path) if truth_path else None
    dataset = _read_dataset(config, Path(dataset_path))
    inversion = config.inversion(seed)
    result = run(
        inversion,
        dataset,
        config.inversion_grid,
        config.samples_per_segment,
        config.allow_inverse_crime,
    )
    error = _error_index(config, truth_path, result)
    eta = _prediction_error(config, inversion, dataset, result)
    summary = _summarize(config, seed, result, error, eta)

    header = provenance_header(config.hash, seed)
    write_contrast_csv(out_dir / CONTRAST_FILE, result.contrast, header)
    write_contrast_pgm(out_dir / CONTRAST_IMAGE, result.contrast)
    write_dof_csv(out_dir / SOLUTION_FILE, result.solution, header)
    write_trace_csv(out_dir / TRACE_FILE, result.trace, header)
    if isinstance(result.model, GpModel):
        write_model_csv(out_dir / MODEL_FILE, result.model, header)
    write_summary_csv(out_dir / SUMMARY_FILE, summary, header)
    logger.info(
        f"Seed {seed}: cost {summary.best_phi:.4e} with "
        f"{summary.fw_calls} forward solves"
    )
    return summary


def compute_landscape(
    config: RunConfig,
    dataset_path: Path,
    first_path: Path,
    second_path: Path,
    actual_path: Path,
    out_path: Path,
    resolution: int = 41,
) -> Landscape:
    """
    Maps the cost over the plane through three DoF files.

    The actual solution sits at (a, b) = (-1, 1), the first at (0, 1) and
    the second at (-1, 0). Every lattice point costs one forward solve.

    Returns:
        Landscape: the cost values, also written to out_path.
    """
    dataset = _read_dataset(config, Path(dataset_path))
    first, second, actual = (
        read_dof_csv(Path(path))
        for path in (first_path, second_path, actual_path)
    )
    request = LandscapeRequest(first, second, actual, resolution=resolution)
    oracle = CostOracle(
        dataset,
        config.inversion_grid,
        actual.layout,
        actual.q,
        actual.lower,
        actual.upper,
        config.samples_per_segment,
        config.allow_inverse_crime,
    )
    result = landscape(request, oracle)
    header = provenance_header(config.hash, config.seed)
    write_landscape_csv(out_path, result, header)
    return result


def aggregate(summaries: Iterable[RunSummary]) -> list[AggregateRow]:
    """Median and quartiles of each metric over the runs that have it."""
    summaries = list(summaries)
    rows = []
    for metric in AGGREGATED_METRICS:
        values = [
            value
            for summary in summaries
            if (value := getattr(summary, metric)) is not None
        ]
        if not values:
            rows.append(AggregateRow(metric, None, None, None, 0))
            continue
        q1, median, q3 = np.percentile(values, [25, 50, 75])
        rows.append(
            AggregateRow(
                metric, float(median), float(q1), float(q3), len(values)
            )
        )
    return rows


def batch(
    config: RunConfig,
    out_dir: Path,
    dataset_path: Path | None = None,
    truth_path: Path | None = None,
) -> list[AggregateRow]:
    """
    Inverts one dataset once per seed and aggregates the summaries.

    Without a dataset the configured scene is synthesized first. Runs go
    to `seed_<seed>` subdirectories, inline or as RQ jobs depending on
    DTIS_BATCH_USE_QUEUE; either way the aggregate is computed from the
    summary files.

    Returns:
        list[AggregateRow]: the rows written to the aggregate file.
    """
    if dataset_path is None:
        dataset_path, truth_path = synth(config, out_dir)
    run_dirs = {seed: out_dir / f"seed_{seed}" for seed in config.seeds}
    if settings.DTIS_BATCH_USE_QUEUE:
        jobs = [
            enqueue_inversion(config, dataset_path, run_dir, truth_path, seed)
            for seed, run_dir in run_dirs.items()
        ]
        logger.info(f"Enqueued {len(jobs)} inversions")
        wait_for_jobs(jobs, settings.DTIS_BATCH_POLL_INTERVAL)
    else:
        for seed, run_dir in run_dirs.items():
            invert(config, dataset_path, run_dir, truth_path, seed)

    summaries = [
        read_summary_csv(run_dir / SUMMARY_FILE)
        for run_dir in run_dirs.values()
    ]
    rows = aggregate(summaries)
    header = provenance_header(config.hash, config.seed)
    write_aggregate_csv(out_dir / AGGREGATE_FILE, rows, header)
    return rows
