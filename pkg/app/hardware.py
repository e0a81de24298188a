from __future__ import annotations

from dataclasses import dataclass
import os
import platform

try:
    import psutil  # type: ignore
except ImportError:
    psutil = None


@dataclass(frozen=True, slots=True)
class HardwareInfo:
    total_ram_gb: float
    cpu_count: int
    cpu_freq_mhz: float | None
    machine: str

    @property
    def summary(self) -> str:
        freq = f"{self.cpu_freq_mhz:.0f} MHz" if self.cpu_freq_mhz else "unknown clock"
        return f"RAM: {self.total_ram_gb:.1f} GB | CPU: {self.cpu_count} x {freq} | {self.machine}"


def get_hardware_info() -> HardwareInfo:
    """
    Collect basic host stats recorded next to run timings.
    """
    cpu_freq_mhz = None
    if psutil is not None:
        total_ram_gb = psutil.virtual_memory().total / (1024 ** 3)
        try:
            freq = psutil.cpu_freq()
            cpu_freq_mhz = float(freq.current) if freq is not None else None
        except (OSError, NotImplementedError, AttributeError):
            cpu_freq_mhz = None
    else:
        try:
            total_ram_gb = (
                os.sysconf("SC_PAGE_SIZE") * os.sysconf("SC_PHYS_PAGES")
            ) / (1024 ** 3)
        except (ValueError, OSError, AttributeError):
            total_ram_gb = 0.0

    return HardwareInfo(
        total_ram_gb=total_ram_gb,
        cpu_count=os.cpu_count() or 1,
        cpu_freq_mhz=cpu_freq_mhz,
        machine=platform.machine() or "unknown",
    )
