"""Single-scale retinex illumination normalization.

The surround is a truncated, normalized Gaussian applied separably with
reflect padding.  The log ratio uses a +1 offset so zero intensities stay
finite, and the result is min-max rescaled to [0, 255].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d

from .imagebuf import GrayImage


@dataclass(frozen=True)
class RetinexConfig:
    sigma: float = 30.0
    kernel_radius: int | None = None
    rescale: str = "minmax"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.kernel_radius is not None and self.kernel_radius < 0:
            raise ValueError(f"kernel_radius must be >= 0, got {self.kernel_radius}")
        if self.rescale not in ("minmax", "none"):
            raise ValueError(f"unknown rescale mode {self.rescale!r}")

    @property
    def radius(self) -> int:
        if self.kernel_radius is not None:
            return self.kernel_radius
        return math.ceil(3 * self.sigma)


def gaussian_kernel_1d(config: RetinexConfig) -> np.ndarray:
    r = config.radius
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * config.sigma**2))
    return k / k.sum()


def gaussian_kernel(config: RetinexConfig) -> np.ndarray:
    """The ``(2r+1, 2r+1)`` surround kernel, summing to 1."""
    k = gaussian_kernel_1d(config)
    return np.outer(k, k)


def blur(data: np.ndarray, config: RetinexConfig) -> np.ndarray:
    """Separable Gaussian surround with reflect (``d c b | a b c d``) borders."""
    k = gaussian_kernel_1d(config)
    r = config.radius
    padded = np.pad(np.asarray(data, dtype=np.float64), r, mode="reflect")
    out = correlate1d(padded, k, axis=0, mode="constant")
    out = correlate1d(out, k, axis=1, mode="constant")
    return out[r:r + data.shape[0], r:r + data.shape[1]]


def ssr_log_ratio(img: GrayImage, config: RetinexConfig) -> np.ndarray:
    """``log(I + 1) - log(F * I + 1)`` without any rescaling."""
    data = img.data
    if data.min() <= -1.0:
        raise ValueError("retinex needs intensities > -1 (log offset is +1)")
    return np.log(data + 1.0) - np.log(blur(data, config) + 1.0)


def rescale_minmax(values: np.ndarray) -> np.ndarray:
    lo = values.min()
    hi = values.max()
    if hi <= lo:
        return np.zeros_like(values)
    return (values - lo) * (255.0 / (hi - lo))


def ssr_normalize(img: GrayImage, config: RetinexConfig | None = None) -> GrayImage:
    config = config or RetinexConfig()
    r = ssr_log_ratio(img, config)
    if config.rescale == "minmax":
        r = rescale_minmax(r)
    return GrayImage.from_array(r)
