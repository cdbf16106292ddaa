"""Vectorized numpy implementations of the labeling and counting kernels.

These are the reference path: always importable, used when numba is missing
or disabled through ``POROLBP_PURE_NUMPY``.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def label_map_1d(img, length, ut, axis):
    """Label every length-``length`` run starting at each valid pixel.

    ``axis=1`` gives horizontal runs (output shape ``(h, w - L + 1)``),
    ``axis=0`` vertical runs (output shape ``(h - L + 1, w)``).
    """
    if axis == 0:
        return label_map_1d(img.T, length, ut, 1).T
    h, w = img.shape
    n = w - length + 1
    first = img[:, :n]
    bit0 = img[:, 1:1 + n] >= first
    prev = bit0
    ones = bit0.astype(np.int32)
    u = np.zeros((h, n), dtype=np.int32)
    for i in range(2, length):
        b = img[:, i:i + n] >= first
        ones += b
        u += b ^ prev
        prev = b
    u += prev ^ bit0
    return np.where(u <= ut, ones, np.int32(length)).astype(np.int32)


def sample_ring(img, corners, weights, margin):
    """Interpolated neighbor samples for every interior pixel.

    Returns an array of shape ``(P, h - 2m, w - 2m)``.  Each neighbor is the
    weighted sum of four pixels summed as ``(t0 + t1) + (t2 + t3)`` so that a
    90 degree rotation of the image (which swaps t2 and t3) is bit-exact.
    """
    h, w = img.shape
    m = margin
    ih, iw = h - 2 * m, w - 2 * m
    p = corners.shape[0]
    out = np.empty((p, ih, iw))
    for k in range(p):
        t = []
        for j in range(4):
            dy, dx = corners[k, j]
            t.append(weights[k, j] * img[m + dy:m + dy + ih, m + dx:m + dx + iw])
        out[k] = (t[0] + t[1]) + (t[2] + t[3])
    return out


def riu_label_map_2d(img, corners, weights, margin, ut):
    samples = sample_ring(img, corners, weights, margin)
    h, w = img.shape
    center = img[margin:h - margin, margin:w - margin]
    bits = (samples >= center).astype(np.int8)
    p = bits.shape[0]
    u = np.abs(bits - np.roll(bits, 1, axis=0)).sum(axis=0, dtype=np.int32)
    ones = bits.sum(axis=0, dtype=np.int32)
    return np.where(u <= ut, ones, p + 1).astype(np.int32)


def window_histograms(labels, origins, rows, cols, nlabels):
    """Label counts inside ``rows x cols`` blocks of ``labels`` at each origin.

    Gathers every block into one ``(n, rows, cols)`` array and counts all of
    them with a single offset ``bincount``.
    """
    origins = np.asarray(origins, dtype=np.int64).reshape(-1, 2)
    n = origins.shape[0]
    rr = origins[:, 0, None, None] + np.arange(rows)[None, :, None]
    cc = origins[:, 1, None, None] + np.arange(cols)[None, None, :]
    keys = labels[rr, cc].astype(np.int64) + nlabels * np.arange(n)[:, None, None]
    return np.bincount(keys.ravel(), minlength=n * nlabels).reshape(n, nlabels)


def segments(window, length):
    """All horizontal runs of a 2D view as an ``(n, length)`` array."""
    return sliding_window_view(window, length, axis=1).reshape(-1, length)
