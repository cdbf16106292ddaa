"""Porosity percentage, quality grades and window-level evaluation metrics."""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass

import numpy as np

from .detector import DefectPattern
from .errors import FormatError, GeometryError
from .imagebuf import partition_windows

GRADE_NAMES = ("super-premium", "premium", "grade-1", "grade-2", "grade-3")
OVERFLOW_GRADE = "rejected"

# Upper band edges in percent; every table starts at 0.
DEFAULT_GRADES_INI = """\
[cream-travertine]
bands = 5, 10, 15, 20, 25

[orange-travertine]
bands = 3, 6, 10, 13, 16

[hatchet]
bands = 7, 14, 21, 28, 35
"""


def normalize_stone_name(name: str) -> str:
    return "-".join(name.strip().lower().replace("_", " ").replace("-", " ").split())


@dataclass(frozen=True)
class GradeTable:
    stone_type: str
    bands: tuple[tuple[str, float, float], ...]
    overflow: str = OVERFLOW_GRADE

    def __post_init__(self):
        if not self.bands:
            raise ValueError("grade table needs at least one band")
        prev_hi = None
        for name, lo, hi in self.bands:
            if not lo < hi:
                raise ValueError(f"band {name!r} is empty: [{lo}, {hi})")
            if prev_hi is not None and lo != prev_hi:
                raise ValueError(f"band {name!r} does not start where the previous ended")
            prev_hi = hi

    @classmethod
    def from_edges(cls, stone_type: str, edges, names=GRADE_NAMES) -> GradeTable:
        edges = [float(e) for e in edges]
        if len(edges) != len(names):
            raise ValueError(f"expected {len(names)} band edges, got {len(edges)}")
        lows = [0.0] + edges[:-1]
        return cls(normalize_stone_name(stone_type), tuple(zip(names, lows, edges)))

    def grade(self, porosity: float) -> str:
        """Name of the half-open band ``[lo, hi)`` containing ``porosity``."""
        if not 0.0 <= porosity <= 100.0:
            raise ValueError(f"porosity must be in [0, 100], got {porosity}")
        for name, lo, hi in self.bands:
            if lo <= porosity < hi:
                return name
        if porosity < self.bands[0][1]:
            raise ValueError(f"porosity {porosity} below the first band")
        return self.overflow


def parse_grade_tables(text: str) -> dict[str, GradeTable]:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise FormatError(f"malformed grade table: {exc}") from None
    tables = {}
    for section in parser.sections():
        try:
            edges = [e for e in parser.get(section, "bands").replace(",", " ").split()]
            table = GradeTable.from_edges(section, edges)
        except (configparser.Error, ValueError) as exc:
            raise FormatError(f"grade table [{section}]: {exc}") from None
        tables[table.stone_type] = table
    if not tables:
        raise FormatError("grade table file defines no stone types")
    return tables


def load_grade_tables(path: str | os.PathLike | None = None) -> dict[str, GradeTable]:
    if path is None:
        return parse_grade_tables(DEFAULT_GRADES_INI)
    with open(path, encoding="utf-8") as fh:
        return parse_grade_tables(fh.read())


def porosity_percent(pattern: DefectPattern | np.ndarray) -> float:
    mask = pattern.mask if isinstance(pattern, DefectPattern) else np.asarray(pattern) != 0
    if mask.size == 0:
        raise ValueError("empty defect pattern")
    return 100.0 * np.count_nonzero(mask) / mask.size


def grade(stone_type: str, porosity: float, tables: dict[str, GradeTable] | None = None) -> str:
    tables = tables if tables is not None else load_grade_tables()
    key = normalize_stone_name(stone_type)
    if key not in tables:
        raise KeyError(f"unknown stone type {stone_type!r}; known: {', '.join(sorted(tables))}")
    return tables[key].grade(porosity)


def porous_pixel_threshold(window: int) -> int:
    """At least 1% of the window's pixels, and never less than one (3 for 16x16)."""
    return max(1, math.ceil(0.01 * window * window))


def window_ground_truth(mask_window) -> bool:
    """True (porous) when the window holds at least 1% defective pixels."""
    mask_window = np.asarray(mask_window)
    w = max(mask_window.shape)
    return int(np.count_nonzero(mask_window)) >= porous_pixel_threshold(w)


def window_verdicts(pattern: DefectPattern, window: int) -> np.ndarray:
    grid = partition_windows((pattern.height, pattern.width), window, 0)
    return np.array([window_ground_truth(pattern.mask[r:r + window, c:c + window])
                     for r, c in grid.origins], dtype=bool)


@dataclass(frozen=True)
class MetricsReport:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n_total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def n_cc(self) -> int:
        """Healthy windows reported healthy."""
        return self.tn

    @property
    def n_dd(self) -> int:
        """Porous windows reported porous."""
        return self.tp

    @property
    def detection_rate(self) -> float:
        return 100.0 * (self.n_cc + self.n_dd) / self.n_total

    @property
    def sensitivity(self) -> float:
        # no porous windows in the truth: nothing to miss
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 1.0

    @property
    def specificity(self) -> float:
        return self.tn / (self.tn + self.fp) if self.tn + self.fp else 1.0

    def as_dict(self) -> dict:
        return {
            "detection_rate": self.detection_rate,
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "n_cc": self.n_cc,
            "n_dd": self.n_dd,
            "n_total": self.n_total,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
        }

    def to_text(self) -> str:
        d = self.as_dict()
        lines = [
            f"{'detection rate':<16}{d['detection_rate']:>10.2f} %",
            f"{'sensitivity':<16}{d['sensitivity']:>10.4f}",
            f"{'specificity':<16}{d['specificity']:>10.4f}",
        ]
        lines += [f"{k.upper():<16}{d[k]:>10d}" for k in ("n_cc", "n_dd", "n_total", "tp", "fp", "tn", "fn")]
        return "\n".join(lines)

    def to_machine(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.as_dict().items())


def metrics_from_verdicts(predicted, truth) -> MetricsReport:
    predicted = np.asarray(predicted, dtype=bool)
    truth = np.asarray(truth, dtype=bool)
    if predicted.shape != truth.shape:
        raise GeometryError("verdict grids differ in shape")
    return MetricsReport(
        tp=int(np.count_nonzero(predicted & truth)),
        fp=int(np.count_nonzero(predicted & ~truth)),
        tn=int(np.count_nonzero(~predicted & ~truth)),
        fn=int(np.count_nonzero(~predicted & truth)),
    )


def evaluate(predicted: DefectPattern, truth: DefectPattern, window: int = 16) -> MetricsReport:
    """Compare two patterns window by window on a non-overlapping grid.

    Both are reduced with the same rule (porous when at least 1% of a
    window's pixels are set); block-shaped detector output passes through it
    unchanged.
    """
    if (predicted.width, predicted.height) != (truth.width, truth.height):
        raise GeometryError(
            f"pattern sizes differ: {predicted.width}x{predicted.height} vs {truth.width}x{truth.height}"
        )
    return metrics_from_verdicts(window_verdicts(predicted, window), window_verdicts(truth, window))
