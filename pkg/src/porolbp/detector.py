"""Training on a defect-free image and window-level porosity detection.

Training labels the (optionally retinex-normalized) healthy image with the
horizontal and vertical 1D operators, takes the whole-image histograms as
base vectors, and sets each orientation's healthiness threshold to the
largest log-likelihood ratio of any training window from its base vector.
Detection tiles the test image with non-overlapping windows and flags a
window when either orientation's ratio exceeds its threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError
from .features import (
    FeatureVector,
    check_operator_count,
    histogram,
    llr_probs,
    windowed_counts,
)
from .imagebuf import GrayImage, partition_windows
from .lbp import HORIZONTAL, VERTICAL, Lbp1dConfig, label_map_1d
from .retinex import RetinexConfig, ssr_normalize

FORMAT_VERSION = 1


@dataclass(frozen=True)
class DetectorConfig:
    window: int = 16
    segment_length: int = 8
    uniformity_threshold: float | None = None
    train_overlap: int | None = None
    retinex: RetinexConfig | None = field(default_factory=RetinexConfig)

    def __post_init__(self):
        check_operator_count(self.window, self.segment_length)
        if not 0 <= self.overlap < self.window:
            raise GeometryError(f"train overlap must be in [0, {self.window})")
        Lbp1dConfig(self.segment_length, self.uniformity_threshold)

    @property
    def overlap(self) -> int:
        return self.window // 2 if self.train_overlap is None else self.train_overlap

    def lbp(self, orientation: str) -> Lbp1dConfig:
        return Lbp1dConfig(self.segment_length, self.uniformity_threshold, orientation)


@dataclass(frozen=True)
class TrainedModel:
    stone_type: str
    base_x: FeatureVector
    base_y: FeatureVector
    threshold_x: float
    threshold_y: float
    config: DetectorConfig
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.threshold_x < 0 or self.threshold_y < 0:
            raise ValueError("thresholds must be non-negative")
        n = self.config.segment_length + 1
        if self.base_x.dim != n or self.base_y.dim != n:
            raise GeometryError(f"base vectors must have {n} entries")


@dataclass(frozen=True, eq=False)
class DefectPattern:
    """Binary per-pixel verdict: True (white, 255) = porous, False = healthy."""

    width: int
    height: int
    mask: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.mask, dtype=bool, copy=True).reshape(self.height, self.width)
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_array(cls, mask) -> DefectPattern:
        mask = np.asarray(mask)
        return cls(mask.shape[1], mask.shape[0], mask != 0)

    def to_image_array(self) -> np.ndarray:
        return np.where(self.mask, 255, 0).astype(np.uint8)

    def __eq__(self, other):
        if not isinstance(other, DefectPattern):
            return NotImplemented
        return np.array_equal(self.mask, other.mask)

    __hash__ = None


@dataclass(frozen=True)
class WindowDistances:
    origins: np.ndarray
    dist_x: np.ndarray
    dist_y: np.ndarray
    flagged: np.ndarray


def preprocess(img: GrayImage, retinex: RetinexConfig | None) -> GrayImage:
    return img if retinex is None else ssr_normalize(img, retinex)


def _window_distances(data, origins, cfg: DetectorConfig, base_x, base_y):
    out = []
    for orient, base in ((HORIZONTAL, base_x), (VERTICAL, base_y)):
        lcfg = cfg.lbp(orient)
        counts = windowed_counts(label_map_1d(data, lcfg), origins, cfg.window, lcfg)
        probs = counts / counts.sum(axis=1, keepdims=True)
        out.append(llr_probs(probs, base.probs))
    return out


def train(healthy: GrayImage, cfg: DetectorConfig | None = None, stone_type: str = "unknown") -> TrainedModel:
    cfg = cfg or DetectorConfig()
    grid = partition_windows(healthy, cfg.window, cfg.overlap)
    img = preprocess(healthy, cfg.retinex)
    base_x = histogram(label_map_1d(img, cfg.lbp(HORIZONTAL)), cfg.segment_length + 1)
    base_y = histogram(label_map_1d(img, cfg.lbp(VERTICAL)), cfg.segment_length + 1)
    dx, dy = _window_distances(img, grid.as_array(), cfg, base_x, base_y)
    return TrainedModel(stone_type, base_x, base_y, float(dx.max()), float(dy.max()), cfg)


def detect_with_stats(test: GrayImage, model: TrainedModel):
    """Defect pattern plus the per-window distances behind it."""
    cfg = model.config
    grid = partition_windows(test, cfg.window, 0)
    origins = grid.as_array()
    img = preprocess(test, cfg.retinex)
    dx, dy = _window_distances(img, origins, cfg, model.base_x, model.base_y)
    flagged = (dx > model.threshold_x) | (dy > model.threshold_y)
    mask = np.zeros(test.shape, dtype=bool)
    w = cfg.window
    for (r, c) in origins[flagged]:
        mask[r:r + w, c:c + w] = True
    pattern = DefectPattern(test.width, test.height, mask)
    return pattern, WindowDistances(origins, dx, dy, flagged)


def detect(test: GrayImage, model: TrainedModel) -> DefectPattern:
    return detect_with_stats(test, model)[0]
