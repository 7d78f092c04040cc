import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase
from PIL import Image

from dtis.core.exceptions import FileFormatError
from dtis.forward.types import Grid
from dtis.geometry.io import (
    read_contrast_csv,
    read_dof_csv,
    write_contrast_csv,
    write_contrast_pgm,
    write_dof_csv,
)
from dtis.geometry.services import decode_to_contrast, encode_single

from .factories import DofVectorFactory


class ContrastFilesTest(SimpleTestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)
        self.grid = Grid(side=2.0, n_side=10)
        dof = encode_single((0.3, 0.3), [0.4] * 4, 2 + 0.5j, side=2.0)
        self.contrast = decode_to_contrast(dof, self.grid)

    def test_csv_layout(self) -> None:
        path = write_contrast_csv(
            self.root / "contrast.csv", self.contrast, "# dtis test"
        )
        lines = path.read_text().splitlines()
        self.assertEqual(lines[0], "# dtis test")
        self.assertEqual(lines[1], "# L_D=2 n_side=10")
        self.assertEqual(lines[2], "x,y,re_tau,im_tau")
        self.assertEqual(len(lines), 3 + self.grid.n)
        # Row-major: x runs fastest.
        self.assertTrue(lines[3].startswith("-0.90000000000000002,-0.9"))
        self.assertTrue(lines[4].startswith("-0.69999999999999996,-0.9"))

        restored = read_contrast_csv(path)
        np.testing.assert_array_equal(restored.values, self.contrast.values)
        self.assertEqual(restored.grid, self.grid)

    def test_truncated_csv_is_rejected(self) -> None:
        path = write_contrast_csv(self.root / "contrast.csv", self.contrast)
        lines = path.read_text().splitlines()[:-3]
        path.write_text("\n".join(lines) + "\n")
        with self.assertRaises(FileFormatError):
            read_contrast_csv(path)

    def test_pgm_has_positive_y_up(self) -> None:
        path = write_contrast_pgm(self.root / "contrast.pgm", self.contrast)
        with Image.open(path) as image:
            self.assertEqual(image.mode, "L")
            self.assertEqual(image.size, (10, 10))
            pixels = np.asarray(image)
        self.assertEqual(pixels.max(), 255)
        # The scatterer sits in the upper right quadrant.
        self.assertEqual(pixels[3, 6], 255)
        self.assertEqual(pixels[7, 2], 0)


class DofFilesTest(SimpleTestCase):
    def test_solution_file_restores_layout_and_bounds(self) -> None:
        dof = DofVectorFactory(doubly_connected=True)
        with tempfile.TemporaryDirectory() as tmp:
            path = write_dof_csv(Path(tmp) / "solution.csv", dof)
            lines = path.read_text().splitlines()
            restored = read_dof_csv(path)
        self.assertEqual(lines[0], "# layout=doubly_connected q=4")
        self.assertEqual(lines[1], "k,value,lower,upper")
        self.assertEqual(restored.layout, dof.layout)
        np.testing.assert_array_equal(restored.values, dof.values)
        np.testing.assert_array_equal(restored.lower, dof.lower)
        np.testing.assert_array_equal(restored.upper, dof.upper)
