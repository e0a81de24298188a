from __future__ import annotations

import numpy as np

from imaging.image_types import RasterImage

# Corners of the inner RGB cube spanned by channel levels 64 and 192, ordered
# so that every prefix is spread out (antipodal pairs first). Both levels sit
# on bin boundaries at 8 bins per axis, so noisy pixels straddle several cubes.
BASE_PALETTE: tuple[tuple[int, int, int], ...] = (
    (64, 64, 64),
    (192, 192, 192),
    (192, 64, 64),
    (64, 192, 192),
    (64, 192, 64),
    (192, 64, 192),
    (64, 64, 192),
    (192, 192, 64),
)

MIN_COLORS = 2
MAX_COLORS = len(BASE_PALETTE)
MAX_NOISE = 64


def synth_image(
    width: int,
    height: int,
    k_colors: int,
    noise_amplitude: int,
    seed: int,
) -> RasterImage:
    """
    Seeded test image with `k_colors` prominent colours.

    The image is split into k vertical strips of near-equal width, strip i
    painted with BASE_PALETTE[i] and every channel perturbed by uniform integer
    noise in [-noise_amplitude, +noise_amplitude], clamped to [0, 255].
    """
    if not (MIN_COLORS <= k_colors <= MAX_COLORS):
        raise ValueError(f"k_colors must be in [{MIN_COLORS}, {MAX_COLORS}].")
    if not (0 <= noise_amplitude <= MAX_NOISE):
        raise ValueError(f"noise_amplitude must be in [0, {MAX_NOISE}].")
    if height < 1 or width < k_colors:
        raise ValueError("synth_image needs height >= 1 and width >= k_colors.")

    rng = np.random.default_rng(seed)
    region = (np.arange(width) * k_colors) // width
    palette = np.array(BASE_PALETTE[:k_colors], dtype=np.int64)
    base = np.broadcast_to(palette[region][None, :, :], (height, width, 3))

    noise = rng.integers(-noise_amplitude, noise_amplitude, size=(height, width, 3), endpoint=True)
    pixels = np.clip(base + noise, 0, 255).astype(np.uint8)
    return RasterImage(width=width, height=height, pixels=pixels)
