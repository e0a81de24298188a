from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

from config.output_paths_config import OutputPathsConfig


class OutputPathsConfigTests(unittest.TestCase):
    def test_from_strings_normalizes_paths(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            cfg = OutputPathsConfig.from_strings(output_folder=root / "out")

            self.assertEqual(cfg.output_folder, (root / "out").resolve())
            self.assertEqual(cfg.trace_path("t1"), (root / "out" / "traces" / "t1.csv").resolve())
            self.assertEqual(cfg.image_path("t1"), (root / "out" / "images" / "t1.ppm").resolve())
            self.assertEqual(cfg.summary_path(), (root / "out" / "summary.csv").resolve())

    def test_ensure_output_dirs_creates_missing_dirs(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            cfg = OutputPathsConfig.from_strings(output_folder=Path(tmpdir) / "out")

            cfg.ensure_output_dirs()

            for folder in (cfg.output_folder, cfg.traces_folder, cfg.images_folder, cfg.archives_folder, cfg.reports_folder):
                self.assertTrue(folder.exists())
                self.assertTrue(folder.is_dir())

    def test_validate_accepts_missing_dirs(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            cfg = OutputPathsConfig.from_strings(output_folder=Path(tmpdir) / "out")
            cfg.validate()
            self.assertFalse(cfg.output_folder.exists())

    def test_validate_raises_when_output_path_is_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            out_file = Path(tmpdir) / "out"
            out_file.write_text("not-a-dir", encoding="utf-8")
            cfg = OutputPathsConfig.from_strings(output_folder=out_file)

            with self.assertRaises(ValueError):
                cfg.validate()

    def test_validate_raises_when_subfolder_is_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir) / "out"
            root.mkdir()
            (root / "traces").write_text("not-a-dir", encoding="utf-8")
            cfg = OutputPathsConfig.from_strings(output_folder=root)

            with self.assertRaises(ValueError):
                cfg.validate()


if __name__ == "__main__":
    unittest.main()
