from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from config.image_source_config import ImageSourceConfig
from config.run_config import RunConfig
from ga.engine import GaEngine
from ga.ga_types import GenerationStats, RunResult
from imaging.image_types import RasterImage
from imaging.quantize import CubeSet, quantize
from imaging.synth import synth_image
from inout.ppm_loader import PpmLoader


@dataclass
class RunService:
    """
    One GA run end to end: image in, quantised instance, evolved result out.
    """
    loader: PpmLoader
    report_every: int = 0

    def load_image(self, image_cfg: ImageSourceConfig) -> RasterImage:
        if image_cfg.path is not None:
            return self.loader.load(image_cfg.path)
        return synth_image(
            width=image_cfg.synth_width,
            height=image_cfg.synth_height,
            k_colors=image_cfg.synth_colors,
            noise_amplitude=image_cfg.synth_noise,
            seed=image_cfg.synth_seed,
        )

    def prepare_instance(self, image_cfg: ImageSourceConfig, bins_per_axis: int) -> tuple[RasterImage, CubeSet]:
        img = self.load_image(image_cfg)
        return img, quantize(img, bins_per_axis)

    def run(
        self,
        cfg: RunConfig,
        img: RasterImage,
        cubes: CubeSet,
        on_generation: Callable[[GenerationStats], None] | None = None,
    ) -> RunResult:
        engine = GaEngine(
            cfg,
            cubes,
            img,
            diversity_every=self.report_every,
            on_generation=on_generation,
        )
        return engine.run()
