"""Label histograms and the log-likelihood-ratio dissimilarity."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import GeometryError
from .imagebuf import GrayImage, horizontal_segments, vertical_segments
from .lbp import HORIZONTAL, VERTICAL, Lbp1dConfig, label_map_1d, lbp1d_label

SMOOTHING = 1e-6
MIN_OPERATORS = 100


@dataclass(frozen=True, eq=False)
class FeatureVector:
    """Normalized label occurrence probabilities plus the raw total."""

    probs: np.ndarray = field(repr=False)
    label_count: int

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64, copy=True)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probs must be a non-empty 1D vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probs must be finite and non-negative")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_counts(cls, counts) -> FeatureVector:
        counts = np.asarray(counts, dtype=np.int64)
        total = int(counts.sum())
        if total <= 0:
            raise ValueError("cannot normalize an empty histogram")
        return cls(counts / total, total)

    @property
    def dim(self) -> int:
        return self.probs.size

    def __eq__(self, other):
        if not isinstance(other, FeatureVector):
            return NotImplemented
        return self.label_count == other.label_count and np.array_equal(self.probs, other.probs)

    __hash__ = None


def histogram(labels, label_space_size: int) -> FeatureVector:
    labels = np.asarray(labels).ravel()
    if labels.size == 0:
        raise ValueError("histogram of an empty label sequence")
    if labels.min() < 0 or labels.max() >= label_space_size:
        raise ValueError(f"label outside [0, {label_space_size})")
    return FeatureVector.from_counts(np.bincount(labels, minlength=label_space_size))


def operator_count(window: int, length: int) -> int:
    return (window - length + 1) * window


def check_operator_count(window: int, length: int) -> int:
    """Raise when ``window < length``; warn when a window gets under 100 runs."""
    if window < length:
        raise GeometryError(f"window {window} shorter than segment length {length}")
    n = operator_count(window, length)
    if n < MIN_OPERATORS:
        warnings.warn(
            f"only {n} operators per {window}x{window} window with L={length} "
            f"(fewer than {MIN_OPERATORS}); window histograms will be noisy",
            stacklevel=3,
        )
    return n


def extract_window_features(window, length: int = 8, uniformity_threshold=None):
    """Horizontal and vertical feature vectors of one window.

    Labels each run individually (no whole-image kernel), which makes this the
    direct route used to cross-check the windowed counts in the detector.
    """
    view = window.data if isinstance(window, GrayImage) else np.asarray(window, dtype=np.float64)
    if min(view.shape) < length:
        raise GeometryError(f"window {view.shape} shorter than segment length {length}")
    check_operator_count(min(view.shape), length)
    hcfg = Lbp1dConfig(length, uniformity_threshold, HORIZONTAL)
    vcfg = Lbp1dConfig(length, uniformity_threshold, VERTICAL)
    fx = histogram([lbp1d_label(s, hcfg) for s in horizontal_segments(view, length)], length + 1)
    fy = histogram([lbp1d_label(s, vcfg) for s in vertical_segments(view, length)], length + 1)
    return fx, fy


def image_features(img, cfg: Lbp1dConfig) -> FeatureVector:
    """Histogram of all runs of one orientation over the whole image."""
    return histogram(label_map_1d(img, cfg), cfg.n_labels)


def windowed_counts(label_map: np.ndarray, origins, window: int, cfg: Lbp1dConfig) -> np.ndarray:
    """Per-window label counts read off a whole-image label map."""
    span = window - cfg.length + 1
    rows, cols = (window, span) if cfg.axis == 1 else (span, window)
    return kernels.window_histograms(label_map, origins, rows, cols, cfg.n_labels)


def smooth(p: np.ndarray, eps: float = SMOOTHING) -> np.ndarray:
    return (p + eps) / (1.0 + p.shape[-1] * eps)


def llr_probs(s: np.ndarray, m: np.ndarray, eps: float = SMOOTHING) -> np.ndarray:
    """Vectorized log-likelihood ratio of each row of ``s`` against ``m``."""
    s = smooth(np.asarray(s, dtype=np.float64), eps)
    m = smooth(np.asarray(m, dtype=np.float64), eps)
    if s.shape[-1] != m.shape[-1]:
        raise GeometryError(f"dimension mismatch: {s.shape[-1]} vs {m.shape[-1]}")
    # max(., 0) only absorbs rounding when s == m
    return np.maximum((s * (np.log(s) - np.log(m))).sum(axis=-1), 0.0)


def log_likelihood_ratio(s: FeatureVector | np.ndarray, m: FeatureVector | np.ndarray) -> float:
    """``sum_i S_i ln(S_i / M_i)`` on epsilon-smoothed copies of S and M."""
    s = s.probs if isinstance(s, FeatureVector) else s
    m = m.probs if isinstance(m, FeatureVector) else m
    return float(llr_probs(s, m))
