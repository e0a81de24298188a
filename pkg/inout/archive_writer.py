from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ga.neoteny import NeotenyArchive
from inout.csv_writer import CsvTableWriter


@dataclass(frozen=True, slots=True)
class ArchiveWriter:
    """
    Snapshot of a neoteny archive: one bit string per line in <id>.archive.txt
    and a sidecar <id>.archive.csv with capture_generation,fitness.
    """
    output_dir: Path

    def write(self, test_id: str, archive: NeotenyArchive) -> tuple[Path, Path]:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        bits_path = self.output_dir / f"{test_id}.archive.txt"
        lines = [entry.chromosome.to_text() for entry in archive.entries]
        bits_path.write_text("".join(line + "\n" for line in lines), encoding="ascii", newline="")

        sidecar = CsvTableWriter().write(
            self.output_dir / f"{test_id}.archive.csv",
            ("capture_generation", "fitness"),
            ((str(e.generation), repr(e.fitness)) for e in archive.entries),
        )
        return bits_path, sidecar
