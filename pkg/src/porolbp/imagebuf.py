"""Grayscale image container, window grids and segment extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._numpy_kernels import segments as _row_segments
from .errors import GeometryError


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable real-valued grayscale image.

    ``data`` is a read-only ``(height, width)`` float64 array.  Values are
    nominally in [0, 255] but only finiteness is enforced, so that gray-level
    shifts and log-domain intermediates can be represented.
    """

    width: int
    height: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise GeometryError(f"image must be at least 1x1, got {self.width}x{self.height}")
        arr = np.array(self.data, dtype=np.float64, copy=True)
        if arr.size != self.width * self.height:
            raise GeometryError(
                f"dimension mismatch: {arr.size} samples for {self.width}x{self.height}"
            )
        arr = arr.reshape(self.height, self.width)
        if not np.all(np.isfinite(arr)):
            raise GeometryError("image contains non-finite samples")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_array(cls, arr) -> GrayImage:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise GeometryError(f"expected a 2D array, got shape {arr.shape}")
        return cls(arr.shape[1], arr.shape[0], arr)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    def pixel(self, x: int, y: int) -> float:
        return float(self.data[y, x])

    def window(self, row0: int, col0: int, size: int) -> np.ndarray:
        return self.data[row0:row0 + size, col0:col0 + size]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    __hash__ = None


def new_image(width: int, height: int, data) -> GrayImage:
    return GrayImage(int(width), int(height), np.asarray(data, dtype=np.float64).ravel())


@dataclass(frozen=True)
class WindowGrid:
    window_size: int
    stride: int
    origins: list[tuple[int, int]]

    def __len__(self):
        return len(self.origins)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.origins, dtype=np.int64).reshape(-1, 2)


def _axis_starts(n: int, size: int, stride: int) -> list[int]:
    starts = list(range(0, n - size + 1, stride))
    if starts[-1] + size < n:
        starts.append(n - size)
    return starts


def partition_windows(img: GrayImage | tuple[int, int], window: int, overlap: int = 0) -> WindowGrid:
    """Square windows of side ``window`` stepping by ``window - overlap``.

    A trailing window flush with the right/bottom edge is added whenever the
    stride does not land on it, so every pixel is covered when overlap is 0.
    ``img`` may also be a ``(height, width)`` tuple.
    """
    height, width = img.shape if isinstance(img, GrayImage) else img
    if window < 1:
        raise GeometryError(f"window must be positive, got {window}")
    if window > min(width, height):
        raise GeometryError(f"window {window} larger than image {width}x{height}")
    if not 0 <= overlap < window:
        raise GeometryError(f"overlap must be in [0, {window}), got {overlap}")
    stride = window - overlap
    rows = _axis_starts(height, window, stride)
    cols = _axis_starts(width, window, stride)
    return WindowGrid(window, stride, [(r, c) for r in rows for c in cols])


def _check_length(view: np.ndarray, length: int, axis: int):
    if length < 1:
        raise GeometryError(f"segment length must be positive, got {length}")
    if length > view.shape[axis]:
        raise GeometryError(f"segment length {length} exceeds window extent {view.shape[axis]}")


def horizontal_segments(window, length: int) -> np.ndarray:
    """Every run of ``length`` consecutive pixels within one row.

    Returns an ``(n, length)`` array ordered row-major by run start; for a
    ``W x W`` window ``n = (W - length + 1) * W``.
    """
    view = window.data if isinstance(window, GrayImage) else np.asarray(window)
    _check_length(view, length, 1)
    return _row_segments(view, length)


def vertical_segments(window, length: int) -> np.ndarray:
    view = window.data if isinstance(window, GrayImage) else np.asarray(window)
    _check_length(view, length, 0)
    return _row_segments(view.T, length)


def min_window_count(width: int, height: int, window: int) -> int:
    return math.ceil(width / window) * math.ceil(height / window)
