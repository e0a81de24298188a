from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from config.harness_config import HarnessConfig
from config.output_paths_config import OutputPathsConfig


@dataclass(frozen=True, slots=True)
class AppConfig:
    output_paths: OutputPathsConfig
    harness: HarnessConfig


def build_settings(
    output_folder: str | Path = "results",
    max_parallel: int | str = 1,
    report_every: int | str = 100,
    binary_ppm: bool | str = True,
    create_dirs: bool = True,
) -> AppConfig:

    output_paths = OutputPathsConfig.from_strings(output_folder=output_folder)
    output_paths.validate()
    if create_dirs:
        output_paths.ensure_output_dirs()

    harness = HarnessConfig.from_strings(
        max_parallel=max_parallel,
        report_every=report_every,
        binary_ppm=binary_ppm,
    )
    harness.validate()

    return AppConfig(
        output_paths=output_paths,
        harness=harness,
    )
