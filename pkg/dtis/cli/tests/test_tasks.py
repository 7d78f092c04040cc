from pathlib import Path
from unittest.mock import Mock, patch

from django.test import SimpleTestCase, override_settings
from rq.job import JobStatus

from dtis.cli.exceptions import BatchError
from dtis.cli.tasks import enqueue_inversion, wait_for_jobs

from .factories import RunConfigFactory


def job(*statuses: JobStatus) -> Mock:
    return Mock(id="job", get_status=Mock(side_effect=list(statuses)))


@patch("dtis.cli.tasks.time.sleep")
class WaitForJobsTest(SimpleTestCase):
    def test_returns_once_every_job_finished(self, sleep) -> None:
        jobs = [
            job(JobStatus.QUEUED, JobStatus.STARTED, JobStatus.FINISHED),
            job(JobStatus.FINISHED),
        ]
        wait_for_jobs(jobs, 0.5)
        self.assertEqual(sleep.call_count, 2)
        sleep.assert_called_with(0.5)

    def test_failed_job_aborts_the_batch(self, sleep) -> None:
        test_cases = [
            JobStatus.FAILED,
            JobStatus.STOPPED,
            JobStatus.CANCELED,
        ]
        for status in test_cases:
            with self.subTest(status=status):
                jobs = [
                    job(JobStatus.STARTED, status),
                    job(JobStatus.FINISHED),
                ]
                with self.assertRaisesMessage(BatchError, status.value):
                    wait_for_jobs(jobs, 1.0)


@patch("dtis.cli.tasks.queue")
class EnqueueInversionTest(SimpleTestCase):
    def test_job_arguments(self, queue) -> None:
        config = RunConfigFactory()
        enqueue_inversion(
            config, Path("data.csv"), Path("runs/seed_3"), None, 3
        )
        args = queue.enqueue.call_args.args
        self.assertEqual(args[0], "dtis.cli.services.invert")
        self.assertIs(args[1], config)
        self.assertTrue(args[2].is_absolute())
        self.assertEqual(args[3], Path("runs/seed_3").resolve())
        self.assertEqual(args[4:], (None, 3))
        self.assertIsNone(queue.enqueue.call_args.kwargs["retry"])

    @override_settings(RQ_MAX_NUMBER_OF_RETRIES=2)
    def test_retries_follow_the_settings(self, queue) -> None:
        enqueue_inversion(
            RunConfigFactory(), Path("d.csv"), Path("r"), Path("t.csv"), 1
        )
        retry = queue.enqueue.call_args.kwargs["retry"]
        self.assertEqual(retry.max, 2)
