from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True, slots=True)
class CsvTableWriter:
    """
    Comma separated, '.' decimals, LF line endings. Fields never need quoting.
    """

    def to_text(self, header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()

    def write(self, path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(header, rows), encoding="utf-8", newline="")
        return path

    @staticmethod
    def read(path: Path) -> list[dict[str, str]]:
        with path.open("r", encoding="utf-8", newline="") as fh:
            return list(csv.DictReader(fh))

    @staticmethod
    def parse(text: str) -> list[dict[str, str]]:
        return list(csv.DictReader(io.StringIO(text)))
