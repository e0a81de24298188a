# Import services
from services.run_service import RunService
from services.experiment_service import ExperimentService
from inout.ppm_loader import PpmLoader
from inout.csv_writer import CsvTableWriter
from app.hardware import get_hardware_info


# Standard utilities
from pathlib import Path
from app.settings import AppConfig


def build_container(app_cfg: AppConfig):
    """
    Dependency container builder
    Responsibility
    - Takes a fully loaded config object
    - Constructs the shared services exactly once
    - Wires dependencies together
    - Returns a dictionary of ready-to-use services
    """

    # Determine the project root (used for resolving relative paths)
    project_root = Path(__file__).resolve().parents[1]

    # ----- Input / output layer -----
    loader = PpmLoader(binary_output=app_cfg.harness.binary_ppm)
    csv_writer = CsvTableWriter()

    # ----- Host summary for run reports -----
    hardware = get_hardware_info()

    # ----- GA runs -----
    runner = RunService(
        loader=loader,
        report_every=app_cfg.harness.report_every,
    )

    experiments = ExperimentService(
        runner=runner,
        csv=csv_writer,
        hardware=hardware,
        max_parallel=app_cfg.harness.max_parallel,
        binary_ppm=app_cfg.harness.binary_ppm,
    )

    return {
        "project_root": project_root,
        "loader": loader,
        "csv": csv_writer,
        "hardware": hardware,
        "runner": runner,
        "experiments": experiments,
    }
