from dtis.cli.services import synth

from ..base import RunCommand


class Command(RunCommand):
    help = "Synthesize the scattered-field dataset of a reference scene."

    def run(self, config, out_dir, options):
        dataset, truth = synth(config, out_dir)
        self.stdout.write(
            self.style.SUCCESS(f"Wrote {dataset} and reference {truth}")
        )
