"""Wall-clock comparison of 1D and 2D LBP feature extraction."""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import kernels
from .features import windowed_counts
from .imagebuf import GrayImage, partition_windows
from .lbp import HORIZONTAL, VERTICAL, Lbp1dConfig, Lbp2dConfig, label_map_1d, label_map_2d


@dataclass(frozen=True)
class BenchResult:
    width: int
    height: int
    backend: str
    repeats: int
    time_1d: float
    time_2d: float

    @property
    def ratio(self) -> float:
        return self.time_1d / self.time_2d if self.time_2d > 0 else float("inf")

    def as_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "backend": self.backend,
            "repeats": self.repeats,
            "time_1d_s": self.time_1d,
            "time_2d_s": self.time_2d,
            "ratio_1d_over_2d": self.ratio,
        }

    def to_text(self) -> str:
        return "\n".join([
            f"image          {self.width}x{self.height}  backend={self.backend}  best of {self.repeats}",
            f"1D (h+v, L)    {self.time_1d * 1e3:10.3f} ms",
            f"2D (circular)  {self.time_2d * 1e3:10.3f} ms",
            f"ratio 1D/2D    {self.ratio:10.3f}",
        ])

    def to_machine(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_dict().items())


def features_1d(img: GrayImage, window: int = 16, length: int = 8, uniformity_threshold=None):
    """Per-window horizontal and vertical label counts."""
    origins = partition_windows(img, window, 0).as_array()
    out = []
    for orient in (HORIZONTAL, VERTICAL):
        cfg = Lbp1dConfig(length, uniformity_threshold, orient)
        out.append(windowed_counts(label_map_1d(img, cfg), origins, window, cfg))
    return out


def features_2d(img: GrayImage, window: int = 16, cfg: Lbp2dConfig | None = None):
    """Per-window riu label counts; windows are clipped to the labeled interior."""
    cfg = cfg or Lbp2dConfig()
    labels = label_map_2d(img, cfg)
    h, w = labels.shape
    origins = partition_windows((h, w), min(window, h, w), 0).as_array()
    size = min(window, h, w)
    return kernels.window_histograms(labels, origins, size, size, cfg.n_labels)


def _best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_bench(img: GrayImage, window: int = 16, length: int = 8, repeats: int = 5,
              cfg2d: Lbp2dConfig | None = None) -> BenchResult:
    """Best-of-``repeats`` timings after one untimed warm-up call of each path."""
    cfg2d = cfg2d or Lbp2dConfig(points=8, radius=1.0, neighborhood="circular")
    kernels.warmup()
    run1 = lambda: features_1d(img, window, length)  # noqa: E731
    run2 = lambda: features_2d(img, window, cfg2d)  # noqa: E731
    run1()
    run2()
    return BenchResult(img.width, img.height, kernels.BACKEND, repeats,
                       _best_time(run1, repeats), _best_time(run2, repeats))


def bench_image(size: int = 512, seed: int = 0) -> GrayImage:
    from .synth import synthesize

    return synthesize("blotchy", size, 0, seed=seed).image

