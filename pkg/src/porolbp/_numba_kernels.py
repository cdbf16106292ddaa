"""numba-compiled versions of the kernels in ``_numpy_kernels``.

Outputs must match the numpy path exactly; ``tests/test_kernels.py`` checks
both on the same inputs.  Each output row is built column-vectorized: the
neighbor loop is outermost so the inner column loop reads contiguous memory.
"""

import os

import numpy as np
from numba import config, njit, prange

# skip probing an outdated TBB (it only emits a warning before falling back)
if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True, parallel=True)
def label_map_1d(img, length, ut, axis):
    h, w = img.shape
    if axis == 1:
        oh, ow = h, w - length + 1
    else:
        oh, ow = h - length + 1, w
    out = np.empty((oh, ow), dtype=np.int32)
    for r in prange(oh):
        ones = np.zeros(ow, np.int32)
        u = np.zeros(ow, np.int32)
        first = np.empty(ow, np.int32)
        prev = np.empty(ow, np.int32)
        for i in range(1, length):
            for c in range(ow):
                if axis == 1:
                    b = np.int32(img[r, c + i] >= img[r, c])
                else:
                    b = np.int32(img[r + i, c] >= img[r, c])
                ones[c] += b
                if i == 1:
                    first[c] = b
                else:
                    u[c] += b ^ prev[c]
                prev[c] = b
        for c in range(ow):
            if u[c] + (prev[c] ^ first[c]) <= ut:
                out[r, c] = ones[c]
            else:
                out[r, c] = length
    return out


@njit(cache=True, parallel=True)
def riu_label_map_2d(img, corners, weights, margin, ut):
    h, w = img.shape
    m = margin
    ih, iw = h - 2 * m, w - 2 * m
    p = corners.shape[0]
    out = np.empty((ih, iw), dtype=np.int32)
    for r in prange(ih):
        rr = r + m
        ones = np.zeros(iw, np.int32)
        u = np.zeros(iw, np.int32)
        first = np.empty(iw, np.int32)
        prev = np.empty(iw, np.int32)
        for k in range(p):
            r0 = rr + corners[k, 0, 0]
            r1 = rr + corners[k, 1, 0]
            r2 = rr + corners[k, 2, 0]
            r3 = rr + corners[k, 3, 0]
            c0 = m + corners[k, 0, 1]
            c1 = m + corners[k, 1, 1]
            c2 = m + corners[k, 2, 1]
            c3 = m + corners[k, 3, 1]
            w0 = weights[k, 0]
            w1 = weights[k, 1]
            w2 = weights[k, 2]
            w3 = weights[k, 3]
            for c in range(iw):
                # same summation order as the numpy path, for bit-identical samples
                v = (w0 * img[r0, c0 + c] + w1 * img[r1, c1 + c]) + (w2 * img[r2, c2 + c] + w3 * img[r3, c3 + c])
                b = np.int32(v >= img[rr, m + c])
                ones[c] += b
                if k == 0:
                    first[c] = b
                else:
                    u[c] += b ^ prev[c]
                prev[c] = b
        for c in range(iw):
            if u[c] + (prev[c] ^ first[c]) <= ut:
                out[r, c] = ones[c]
            else:
                out[r, c] = p + 1
    return out


@njit(cache=True, parallel=True)
def window_histograms(labels, origins, rows, cols, nlabels):
    n = origins.shape[0]
    counts = np.zeros((n, nlabels), dtype=np.int64)
    for k in prange(n):
        r0 = origins[k, 0]
        c0 = origins[k, 1]
        for r in range(r0, r0 + rows):
            for c in range(c0, c0 + cols):
                counts[k, labels[r, c]] += 1
    return counts
