from __future__ import annotations

from dataclasses import dataclass

from config.neoteny_config import to_bool


@dataclass(frozen=True, slots=True)
class HarnessConfig:
    """
    How the experiment harness executes runs; none of it changes results.
    """
    max_parallel: int = 1
    report_every: int = 100
    binary_ppm: bool = True

    def validate(self) -> None:
        # bool is a subclass of int; reject it explicitly.
        if isinstance(self.max_parallel, bool) or not isinstance(self.max_parallel, int):
            raise ValueError("HarnessConfig.max_parallel must be an integer.")
        if self.max_parallel < 1:
            raise ValueError("HarnessConfig.max_parallel must be >= 1.")
        if isinstance(self.report_every, bool) or not isinstance(self.report_every, int):
            raise ValueError("HarnessConfig.report_every must be an integer.")
        if self.report_every < 0:
            raise ValueError("HarnessConfig.report_every must be >= 0 (0 disables the diversity trace).")
        if not isinstance(self.binary_ppm, bool):
            raise ValueError("HarnessConfig.binary_ppm must be a boolean.")

    @staticmethod
    def from_strings(
        max_parallel: str | int = 1,
        report_every: str | int = 100,
        binary_ppm: bool | str = True,
    ) -> "HarnessConfig":
        cfg = HarnessConfig(
            max_parallel=int(max_parallel),
            report_every=int(report_every),
            binary_ppm=to_bool(binary_ppm),
        )
        cfg.validate()
        return cfg
