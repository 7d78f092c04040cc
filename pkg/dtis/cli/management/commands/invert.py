from dtis.cli.services import invert, synth
from dtis.core.utils.commands import show_summary_table

from ..base import RunCommand


class Command(RunCommand):
    """
    Inverts one dataset and writes the result bundle.

    Without --dataset the scenario is synthesized into the output directory
    first, and its reference scene is used for the error index.
    """

    help = "Retrieve a contrast map from a scattered-field dataset."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_dataset_arguments(parser)

    def run(self, config, out_dir, options):
        dataset, truth = self.dataset_paths(config, options)
        if dataset is None:
            dataset, truth = synth(config, out_dir)
        summary = invert(config, dataset, out_dir, truth)
        self.stdout.write(self.style.SUCCESS(str(show_summary_table(summary))))
