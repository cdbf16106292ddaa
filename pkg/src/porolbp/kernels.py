"""Backend selection for the hot loops.

The numba kernels are used when numba imports cleanly, unless the environment
variable ``POROLBP_PURE_NUMPY`` is set to a truthy value (``1``, ``true``,
``yes``).  The choice is made once, at import time.
"""

import os

import numpy as np

from . import _numpy_kernels

_FLAG = os.environ.get("POROLBP_PURE_NUMPY", "").strip().lower()

if _FLAG in ("1", "true", "yes", "on"):
    _numba_kernels = None
else:
    try:
        from . import _numba_kernels
    except ImportError:  # numba not installed
        _numba_kernels = None

BACKEND = "numpy" if _numba_kernels is None else "numba"
_impl = _numba_kernels if _numba_kernels is not None else _numpy_kernels


def label_map_1d(img, length, ut, axis):
    img = np.ascontiguousarray(img, dtype=np.float64)
    return _impl.label_map_1d(img, int(length), float(ut), int(axis))


def riu_label_map_2d(img, corners, weights, margin, ut):
    img = np.ascontiguousarray(img, dtype=np.float64)
    return _impl.riu_label_map_2d(img, corners, weights, int(margin), float(ut))


def window_histograms(labels, origins, rows, cols, nlabels):
    origins = np.ascontiguousarray(np.asarray(origins, dtype=np.int64).reshape(-1, 2))
    labels = np.ascontiguousarray(labels, dtype=np.int32)
    return _impl.window_histograms(labels, origins, int(rows), int(cols), int(nlabels))


def warmup():
    """Trigger JIT compilation on a tiny input (no-op for the numpy path)."""
    if _numba_kernels is None:
        return
    from .lbp import Lbp2dConfig, sampling_table

    img = np.arange(100, dtype=np.float64).reshape(10, 10) % 7
    lab = label_map_1d(img, 4, 1.0, 1)
    label_map_1d(img, 4, 1.0, 0)
    corners, weights, margin = sampling_table(Lbp2dConfig())
    riu_label_map_2d(img, corners, weights, margin, 2.0)
    window_histograms(lab, [[0, 0]], 2, 2, 5)
