import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from dtis.cli.io import (
    read_summary_csv,
    write_aggregate_csv,
    write_summary_csv,
)
from dtis.cli.types import AggregateRow, RunSummary
from dtis.core.exceptions import FileFormatError


class RunFilesTest(SimpleTestCase):
    def setUp(self) -> None:
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)

    def test_summary_layout(self) -> None:
        summary = RunSummary(
            scenario="tc1",
            mode="go",
            seed=7,
            config_hash="0123456789ab",
            best_phi=0.125,
            initial_phi=0.5,
            fw_calls=1000,
            training_size=None,
            elapsed_s=12.34567,
            call_saving=0.0,
        )
        path = write_summary_csv(self.dir / "summary.csv", summary, "# h")
        lines = path.read_text().splitlines()
        self.assertEqual(lines[:2], ["# h", "key,value"])
        self.assertIn("training_size,unavailable", lines)
        self.assertIn("elapsed_s,12.346", lines)
        self.assertIn("error_index,unavailable", lines)
        stored = read_summary_csv(path)
        self.assertEqual(stored.fw_calls, 1000)
        self.assertIsNone(stored.eta)
        self.assertEqual(stored.mode, "go")

    def test_rejects_foreign_files(self) -> None:
        test_cases = [
            "a,b\n1,2\n",
            "key,value\ncolour,red\n",
            "key,value\nseed,x\n",
            "key,value\nseed,1\n",
            "key,value\nseed,1,2\n",
        ]
        path = self.dir / "summary.csv"
        for text in test_cases:
            with self.subTest(text=text):
                path.write_text(text)
                with self.assertRaises(FileFormatError):
                    read_summary_csv(path)

    def test_aggregate_layout(self) -> None:
        rows = [
            AggregateRow("best_phi", 0.5, 0.25, 0.75, 5),
            AggregateRow("eta", None, None, None, 0),
        ]
        path = write_aggregate_csv(self.dir / "aggregate.csv", rows)
        self.assertEqual(
            path.read_text().splitlines(),
            [
                "metric,median,q1,q3,n",
                "best_phi,0.5,0.25,0.75,5",
                "eta,,,,0",
            ],
        )
