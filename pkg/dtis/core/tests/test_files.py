import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from dtis.core.utils.files import (
    config_hash,
    format_float,
    provenance_header,
    csv_line,
    parse_csv_line,
    read_csv,
    read_lines,
    write_csv,
)


class FormatFloatTest(SimpleTestCase):
    def test_round_trips(self) -> None:
        for value in (0.1, 1 / 3, 2.0, -1e-300, 6.02214076e23):
            with self.subTest(value=value):
                self.assertEqual(float(format_float(value)), value)
        self.assertEqual(format_float(2.0), "2")


class ConfigHashTest(SimpleTestCase):
    def test_ignores_key_order(self) -> None:
        first = config_hash({"a": "1", "b": "2"})
        self.assertEqual(first, config_hash({"b": "2", "a": "1"}))
        self.assertNotEqual(first, config_hash({"a": "1", "b": "3"}))
        self.assertRegex(first, r"^[0-9a-f]{12}$")

    def test_header(self) -> None:
        self.assertEqual(
            provenance_header("0123456789ab", 7),
            "# dtis config_hash=0123456789ab seed=7",
        )


class CsvFilesTest(SimpleTestCase):
    def test_write_creates_parents_and_reads_back(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = write_csv(
                Path(tmp) / "a" / "b.csv", ["# x"], ["k", "v"], [(1, "2")]
            )
            self.assertEqual(path.read_bytes(), b"# x\nk,v\n1,2\n")
            self.assertEqual(read_lines(path), ["# x", "k,v", "1,2"])
            comments, records = read_csv(path)
        self.assertEqual(comments, ["# x"])
        self.assertEqual(records, [["k", "v"], ["1", "2"]])

    def test_cells_with_separators_are_quoted(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            rows = [("a,b", 'say "hi"')]
            path = write_csv(Path(tmp) / "b.csv", [], ["name", "note"], rows)
            self.assertEqual(
                path.read_text().splitlines()[1], '"a,b","say ""hi"""'
            )
            _, records = read_csv(path)
        self.assertEqual(records[1], ["a,b", 'say "hi"'])

    def test_comments_and_blank_records(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "c.csv"
            path.write_text("# a\n# b\nh\n\n1\n# c\n")
            comments, records = read_csv(path)
        self.assertEqual(comments, ["# a", "# b"])
        self.assertEqual(records, [["h"], ["1"], ["# c"]])

    def test_single_lines(self) -> None:
        self.assertEqual(csv_line(["2", 40, "", ""]), "2,40,,")
        self.assertEqual(parse_csv_line("2,40,,"), ["2", "40", "", ""])
        self.assertEqual(parse_csv_line(""), [])
