import logging
import time
from pathlib import Path

from django.conf import settings
from django_rq.queues import get_queue
from rq import Retry
from rq.job import Job, JobStatus

from .config import RunConfig
from .exceptions import BatchError

logger = logging.getLogger(__name__)

queue = get_queue("default")

FAILED_STATUSES = {JobStatus.FAILED, JobStatus.STOPPED, JobStatus.CANCELED}


def enqueue_inversion(
    config: RunConfig,
    dataset_path: Path,
    run_dir: Path,
    truth_path: Path | None,
    seed: int,
) -> Job:
    """
    Enqueue a job that inverts the dataset with one seed.

    Paths are made absolute so a worker started elsewhere finds them.

    Args:
        config (RunConfig): the batch configuration.
        dataset_path (Path): measured or synthetic dataset CSV.
        run_dir (Path): where the job writes its result bundle.
        truth_path (Path | None): reference DoF file for the error index.
        seed (int): inversion seed of the job.

    Returns:
        Job: the queued job.
    """
    retries = settings.RQ_MAX_NUMBER_OF_RETRIES
    return queue.enqueue(
        "dtis.cli.services.invert",
        config,
        dataset_path.resolve(),
        run_dir.resolve(),
        truth_path.resolve() if truth_path else None,
        seed,
        retry=Retry(max=retries) if retries else None,
    )


def wait_for_jobs(jobs: list[Job], poll_interval: float) -> None:
    """
    Polls the jobs until every one of them has finished.

    Raises:
        BatchError: as soon as a job fails, stops or is canceled.
    """
    pending = list(jobs)
    while True:
        for job in list(pending):
            status = job.get_status()
            if status == JobStatus.FINISHED:
                pending.remove(job)
            elif status in FAILED_STATUSES:
                raise BatchError(
                    f"Inversion job {job.id} ended as {status.value}"
                )
        if not pending:
            return
        logger.debug(f"Waiting for {len(pending)} of {len(jobs)} jobs")
        time.sleep(poll_interval)
