from pathlib import Path

from django.conf import settings
from django.core.management import CommandError

from dtis.cli.config import RunConfig, load_run_config, parse_overrides
from dtis.core.management.commands.command_utils import VerboseCommand
from dtis.forward.exceptions import SolverError
from dtis.metrics.exceptions import OracleError
from dtis.optimizer.exceptions import InitializationError
from dtis.optimizer.types import Mode

from ..exceptions import BatchError

# Library failures reported to the user as a one-line CommandError
RUN_ERRORS = (
    ValueError,
    OSError,
    SolverError,
    OracleError,
    InitializationError,
    BatchError,
)


class RunCommand(VerboseCommand):
    """
    Base of the commands that work on a run configuration.

    Subclasses implement `run(config, out_dir, options)`.
    """

    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            type=Path,
            help="Flat 'key = value' run configuration file",
        )
        parser.add_argument("--scenario", help="Reference scene, e.g. tc1")
        parser.add_argument(
            "--mode",
            choices=[mode.value for mode in Mode],
            help="sbd: surrogate-driven swarm; go: bare swarm",
        )
        parser.add_argument("--seed", type=int, help="Run seed")
        parser.add_argument(
            "--out",
            type=Path,
            help="Output directory (default: DTIS_OUTPUT_DIR)",
        )
        parser.add_argument(
            "--allow-inverse-crime",
            action="store_true",
            help="Accept data synthesized on the inversion grid",
        )
        parser.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="Override one configuration key; repeatable",
        )

    def load_config(self, options) -> RunConfig:
        overrides = parse_overrides(options["overrides"])
        flags = {
            "scenario": options["scenario"],
            "mode": options["mode"],
            "seed": options["seed"],
        }
        for key, value in flags.items():
            if value is not None:
                overrides[key] = str(value)
        if options["allow_inverse_crime"]:
            overrides["allow_inverse_crime"] = "true"
        return load_run_config(options["config"], overrides)

    def run(self, config: RunConfig, out_dir: Path, options) -> None:
        raise NotImplementedError

    def handle(self, *args, **options):
        super().handle(*args, **options)
        try:
            config = self.load_config(options)
            out_dir = options["out"] or settings.DTIS_OUTPUT_DIR
            self.logger.info(
                f"Configuration {config.hash} ({config.scenario}, "
                f"{config.mode}), writing to {out_dir}"
            )
            self.run(config, Path(out_dir), options)
        except RUN_ERRORS as e:
            raise CommandError(str(e)) from e

    def add_dataset_arguments(self, parser) -> None:
        parser.add_argument(
            "--dataset",
            type=Path,
            help="Dataset CSV; synthesized from the scenario when omitted",
        )
        parser.add_argument(
            "--truth",
            type=Path,
            help="Reference DoF file used for the error index",
        )

    def dataset_paths(
        self, config: RunConfig, options
    ) -> tuple[Path | None, Path | None]:
        """
        The dataset and truth files given on the command line.

        Raises:
            CommandError: if a measured scenario has no dataset file.
        """
        dataset, truth = options["dataset"], options["truth"]
        if dataset is None and config.scenario_spec.measured:
            raise CommandError(
                f"{config.scenario} is inverted from measured data; "
                f"pass --dataset"
            )
        return dataset, truth
