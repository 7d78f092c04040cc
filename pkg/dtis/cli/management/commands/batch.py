from dtis.cli.services import batch
from dtis.core.utils.commands import show_aggregate_table

from ..base import RunCommand


class Command(RunCommand):
    """
    Repeats the inversion once per configured seed.

    Runs execute inline unless DTIS_BATCH_USE_QUEUE is set, in which case
    one RQ job per seed is enqueued and the command waits for them.
    """

    help = "Invert a dataset with every seed and aggregate the results."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_dataset_arguments(parser)

    def run(self, config, out_dir, options):
        dataset, truth = self.dataset_paths(config, options)
        rows = batch(config, out_dir, dataset, truth)
        self.stdout.write(self.style.SUCCESS(str(show_aggregate_table(rows))))
