from pathlib import Path

from dtis.cli.services import LANDSCAPE_FILE, compute_landscape

from ..base import RunCommand


class Command(RunCommand):
    help = (
        "Map the cost on the plane through the actual solution and two "
        "other DoF vectors."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--dataset", type=Path, required=True)
        for name, role in (
            ("--actual", "placed at (a, b) = (-1, 1)"),
            ("--first", "placed at (a, b) = (0, 1)"),
            ("--second", "placed at (a, b) = (-1, 0)"),
        ):
            parser.add_argument(
                name, type=Path, required=True, help=f"DoF file {role}"
            )
        parser.add_argument(
            "--resolution",
            type=int,
            default=41,
            help="Lattice points along each axis",
        )

    def run(self, config, out_dir, options):
        result = compute_landscape(
            config,
            options["dataset"],
            options["first"],
            options["second"],
            options["actual"],
            out_dir / LANDSCAPE_FILE,
            options["resolution"],
        )
        failed = len(result.failures)
        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {out_dir / LANDSCAPE_FILE}: {result.phi.size} "
                f"points, {result.clamped} clamped, {failed} failed"
            )
        )
