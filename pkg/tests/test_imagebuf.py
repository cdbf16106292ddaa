import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from porolbp import GeometryError, GrayImage, horizontal_segments, new_image, partition_windows, vertical_segments
from porolbp.imagebuf import min_window_count


def test_new_image_pixel_lookup():
    img = new_image(2, 2, [0, 1, 2, 3])
    assert img.pixel(1, 1) == 3
    assert img.pixel(1, 0) == 1
    assert img.shape == (2, 2)


def test_new_image_dimension_mismatch():
    with pytest.raises(GeometryError, match="dimension mismatch"):
        new_image(2, 2, [0, 1, 2])


def test_single_pixel_image():
    img = new_image(1, 1, [255])
    assert (img.width, img.height) == (1, 1)
    assert img.pixel(0, 0) == 255


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(GeometryError):
        new_image(2, 1, [0, bad])


def test_zero_size_rejected():
    with pytest.raises(GeometryError):
        GrayImage(0, 3, [])


def test_image_is_immutable():
    src = np.zeros((3, 3))
    img = GrayImage.from_array(src)
    src[0, 0] = 9
    assert img.pixel(0, 0) == 0
    with pytest.raises(ValueError):
        img.data[0, 0] = 1


def test_partition_exact_tiling():
    grid = partition_windows((32, 32), 16)
    assert grid.origins == [(0, 0), (0, 16), (16, 0), (16, 16)]
    assert grid.stride == 16


def test_partition_identity():
    assert len(partition_windows((16, 16), 16)) == 1


def test_partition_flush_trailing_window():
    # 40 wide, 16 tall
    grid = partition_windows(GrayImage.from_array(np.zeros((16, 40))), 16)
    assert [c for _, c in grid.origins] == [0, 16, 24]


def test_partition_overlap_stride():
    grid = partition_windows((32, 32), 16, overlap=8)
    assert grid.stride == 8
    assert sorted({r for r, _ in grid.origins}) == [0, 8, 16]


@pytest.mark.parametrize("window,overlap", [(17, 0), (16, 16), (16, -1), (0, 0)])
def test_partition_errors(window, overlap):
    with pytest.raises(GeometryError):
        partition_windows((16, 16), window, overlap)


@settings(max_examples=60, deadline=None)
@given(h=st.integers(1, 60), w=st.integers(1, 60), window=st.integers(1, 20), data=st.data())
def test_partition_covers_every_pixel(h, w, window, data):
    if window > min(h, w):
        return
    overlap = data.draw(st.integers(0, window - 1))
    grid = partition_windows((h, w), window, overlap)
    cover = np.zeros((h, w), dtype=int)
    for r, c in grid.origins:
        assert 0 <= r <= h - window and 0 <= c <= w - window
        cover[r:r + window, c:c + window] += 1
    assert cover.min() >= 1
    if overlap == 0:
        assert len(grid) >= min_window_count(w, h, window) == math.ceil(w / window) * math.ceil(h / window)


@pytest.mark.parametrize("fn", [horizontal_segments, vertical_segments])
def test_segment_counts(fn):
    win = np.arange(256.0).reshape(16, 16)
    assert fn(win, 8).shape == (144, 8)
    assert fn(win[:8, :8], 8).shape == (8, 8)
    with pytest.raises(GeometryError):
        fn(win[:4, :4], 8)


def test_segment_contents():
    win = np.arange(256.0).reshape(16, 16)
    h = horizontal_segments(win, 8)
    v = vertical_segments(win, 8)
    assert np.array_equal(h[0], win[0, 0:8])
    assert np.array_equal(h[9], win[1, 0:8])
    assert np.array_equal(v[0], win[0:8, 0])
    assert np.array_equal(v[1], win[1:9, 0])
    assert np.array_equal(vertical_segments(win, 8), horizontal_segments(win.T, 8))


def test_constant_window_segments_identical():
    segs = vertical_segments(np.full((16, 16), 7.0), 8)
    assert (segs == 7.0).all()



def test_segments_stay_inside_window():
    # embed a window inside a larger buffer filled with a sentinel; any read
    # outside the window would surface the sentinel in a segment
    big = np.full((24, 24), -1.0)
    big[4:20, 4:20] = np.arange(256.0).reshape(16, 16)
    win = big[4:20, 4:20]
    for fn in (horizontal_segments, vertical_segments):
        assert (fn(win, 8) >= 0).all()
        assert (fn(GrayImage.from_array(win), 8) >= 0).all()
