"""Local binary pattern operators.

Two families live here:

* the one-dimensional operator, which thresholds a horizontal or vertical
  run of ``L`` pixels against the run's first pixel.  Uniform runs get the
  count of set bits (``0..L-1``); non-uniform runs share the label ``L``.
* the rotation-invariant uniform two-dimensional operator on a circular
  (bilinearly interpolated) or square ring of ``P`` neighbors.  Uniform
  neighborhoods get their popcount (``0..P``); non-uniform ones ``P+1``.

Uniformity is the circular 0/1 transition count of the neighbor bits.
Single-pattern functions are plain Python; whole-image label maps go through
:mod:`porolbp.kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import GeometryError
from .imagebuf import GrayImage

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class Lbp1dConfig:
    length: int = 8
    uniformity_threshold: float | None = None
    orientation: str = HORIZONTAL

    def __post_init__(self):
        if self.length < 2:
            raise GeometryError(f"segment length must be >= 2, got {self.length}")
        if not 0 <= self.ut <= self.length:
            raise GeometryError(f"uniformity threshold must be in [0, {self.length}]")
        if self.orientation not in (HORIZONTAL, VERTICAL):
            raise ValueError(f"unknown orientation {self.orientation!r}")

    @property
    def ut(self) -> float:
        if self.uniformity_threshold is None:
            return self.length / 4
        return float(self.uniformity_threshold)

    @property
    def n_labels(self) -> int:
        return self.length + 1

    @property
    def axis(self) -> int:
        return 1 if self.orientation == HORIZONTAL else 0


@dataclass(frozen=True)
class Lbp2dConfig:
    points: int = 8
    radius: float = 1.0
    uniformity_threshold: float | None = None
    neighborhood: str = "circular"

    def __post_init__(self):
        if self.points < 4 or not self.radius > 0:
            raise GeometryError("need P >= 4 and R > 0")
        if self.neighborhood not in ("circular", "square"):
            raise ValueError(f"unknown neighborhood {self.neighborhood!r}")
        if self.neighborhood == "square" and (
            self.radius != int(self.radius) or self.points != 8 * int(self.radius)
        ):
            raise GeometryError("square neighborhood needs integer R and P = 8R")

    @property
    def ut(self) -> float:
        if self.uniformity_threshold is None:
            return self.points / 4
        return float(self.uniformity_threshold)

    @property
    def n_labels(self) -> int:
        return self.points + 2


def sign(x: float) -> int:
    return 1 if x >= 0 else 0


def _bits(pattern) -> list[int]:
    if isinstance(pattern, str):
        return [int(ch) for ch in pattern]
    return [int(b) for b in pattern]


def circular_transitions(bits) -> int:
    bits = _bits(bits)
    return sum(bits[i] != bits[i - 1] for i in range(len(bits)))


def segment_bits(segment) -> list[int]:
    g1 = segment[0]
    return [sign(g - g1) for g in segment[1:]]


def uniformity_1d(segment, cfg: Lbp1dConfig) -> int:
    """Circular transition count of the bits ``s(g_i - g_1)``, ``i = 2..L``."""
    if len(segment) != cfg.length:
        raise GeometryError(f"segment has {len(segment)} pixels, expected {cfg.length}")
    return circular_transitions(segment_bits(segment))


def lbp1d_label(segment, cfg: Lbp1dConfig) -> int:
    if uniformity_1d(segment, cfg) <= cfg.ut:
        return sum(segment_bits(segment))
    return cfg.length


def uniformity_2d(bits, cfg: Lbp2dConfig | None = None) -> int:
    bits = _bits(bits)
    if cfg is not None and len(bits) != cfg.points:
        raise GeometryError(f"expected {cfg.points} neighbor bits, got {len(bits)}")
    return circular_transitions(bits)


def riu_label_from_bits(bits, cfg: Lbp2dConfig) -> int:
    bits = _bits(bits)
    if uniformity_2d(bits, cfg) <= cfg.ut:
        return sum(bits)
    return cfg.points + 1


def basic_code(bits) -> int:
    """Binomially weighted code ``sum b_i 2^i``."""
    return sum(b << i for i, b in enumerate(_bits(bits)))


def lbp2d_rotation_min(pattern, points: int) -> int:
    """Smallest value over all circular right-rotations of a ``points``-bit code.

    ``pattern`` is an integer or a binary literal string such as ``"10000000"``.
    """
    code = int(pattern, 2) if isinstance(pattern, str) else int(pattern)
    mask = (1 << points) - 1
    code &= mask
    best = code
    for _ in range(1, points):
        code = ((code >> 1) | ((code & 1) << (points - 1))) & mask
        best = min(best, code)
    return best


def _ring_offsets(cfg: Lbp2dConfig) -> list[tuple[float, float]]:
    """Neighbor offsets (dy, dx) in counter-clockwise order starting east."""
    if cfg.neighborhood == "square":
        r = int(cfg.radius)
        pts = [(dy, dx) for dy in range(-r, r + 1) for dx in range(-r, r + 1)
               if max(abs(dy), abs(dx)) == r]
        return sorted(pts, key=lambda p: math.atan2(-p[0], p[1]) % (2 * math.pi))
    offs = []
    for k in range(cfg.points):
        theta = 2 * math.pi * k / cfg.points
        # snap so that offsets related by a quarter turn have identical magnitudes
        dy = round(-cfg.radius * math.sin(theta), 10) + 0.0
        dx = round(cfg.radius * math.cos(theta), 10) + 0.0
        offs.append((dy, dx))
    return offs


def _axis_taps(d: float):
    """Two integer taps and weights along one axis for a real offset."""
    a = abs(d)
    i0 = math.floor(a)
    f = a - i0
    s = -1 if d < 0 else 1
    i1 = i0 + 1 if f > 0 else i0
    return (s * i0, 1.0 - f), (s * i1, f)


@lru_cache(maxsize=None)
def sampling_table(cfg: Lbp2dConfig):
    """Per-neighbor corner offsets ``(P, 4, 2)``, weights ``(P, 4)`` and margin.

    Corners are ordered near/far/mixed/mixed so that kernels can sum them as
    ``(t0 + t1) + (t2 + t3)``; a quarter-turn of the image only swaps the
    two mixed terms and leaves the interpolated value bit-identical.
    """
    offs = _ring_offsets(cfg)
    corners = np.zeros((len(offs), 4, 2), dtype=np.int64)
    weights = np.zeros((len(offs), 4), dtype=np.float64)
    for k, (dy, dx) in enumerate(offs):
        (y0, wy0), (y1, wy1) = _axis_taps(dy)
        (x0, wx0), (x1, wx1) = _axis_taps(dx)
        corners[k] = [(y0, x0), (y1, x1), (y1, x0), (y0, x1)]
        weights[k] = [wy0 * wx0, wy1 * wx1, wy1 * wx0, wy0 * wx1]
    margin = int(np.abs(corners).max())
    corners.flags.writeable = False
    weights.flags.writeable = False
    return corners, weights, margin


def neighbor_samples(img: GrayImage, row: int, col: int, cfg: Lbp2dConfig) -> list[float]:
    corners, weights, margin = sampling_table(cfg)
    if not (margin <= row < img.height - margin and margin <= col < img.width - margin):
        raise GeometryError(f"pixel ({row}, {col}) too close to the border for R={cfg.radius}")
    d = img.data
    out = []
    for k in range(cfg.points):
        t = [weights[k, j] * d[row + corners[k, j, 0], col + corners[k, j, 1]] for j in range(4)]
        out.append(float((t[0] + t[1]) + (t[2] + t[3])))
    return out


def lbp2d_bits(img: GrayImage, row: int, col: int, cfg: Lbp2dConfig) -> list[int]:
    gc = img.data[row, col]
    return [sign(v - gc) for v in neighbor_samples(img, row, col, cfg)]


def lbp2d_label(img: GrayImage, row: int, col: int, cfg: Lbp2dConfig) -> int:
    return riu_label_from_bits(lbp2d_bits(img, row, col, cfg), cfg)


def label_map_1d(img: GrayImage | np.ndarray, cfg: Lbp1dConfig) -> np.ndarray:
    """Label of the run starting at every pixel where a full run fits."""
    data = img.data if isinstance(img, GrayImage) else np.asarray(img, dtype=np.float64)
    if data.shape[cfg.axis] < cfg.length:
        raise GeometryError(f"image extent {data.shape[cfg.axis]} shorter than L={cfg.length}")
    return kernels.label_map_1d(data, cfg.length, cfg.ut, cfg.axis)


def label_map_2d(img: GrayImage | np.ndarray, cfg: Lbp2dConfig) -> np.ndarray:
    """riu labels for every interior pixel; the border ring of width R is skipped."""
    data = img.data if isinstance(img, GrayImage) else np.asarray(img, dtype=np.float64)
    corners, weights, margin = sampling_table(cfg)
    if min(data.shape) <= 2 * margin:
        raise GeometryError(f"image {data.shape} has no interior pixels for R={cfg.radius}")
    return kernels.riu_label_map_2d(data, corners, weights, margin, cfg.ut)


def nonuniform_fraction(labels: np.ndarray, nonuniform_label: int) -> float:
    labels = np.asarray(labels)
    return float(np.count_nonzero(labels == nonuniform_label)) / labels.size
