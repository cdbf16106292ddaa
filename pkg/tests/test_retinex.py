import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from porolbp import GrayImage, RetinexConfig, gaussian_kernel, ssr_normalize
from porolbp.retinex import blur, ssr_log_ratio

# brute-force 2D normalization of exp(-(x^2+y^2)/2) over a 7x7 grid, 30-digit arithmetic
CENTER_WEIGHT_SIGMA1_R3 = 0.15924112569070245


def test_center_weight_matches_direct_2d_sum():
    k = gaussian_kernel(RetinexConfig(sigma=1.0, kernel_radius=3))
    assert k.shape == (7, 7)
    assert k[3, 3] == pytest.approx(CENTER_WEIGHT_SIGMA1_R3, abs=1e-12)
    assert k[3, 3] == pytest.approx(0.1592, abs=1e-4)


def test_delta_kernel():
    k = gaussian_kernel(RetinexConfig(sigma=1e-3, kernel_radius=0))
    assert k.shape == (1, 1) and k[0, 0] == 1.0


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.5, 30.0])
def test_kernel_symmetric_and_normalized(sigma):
    k = gaussian_kernel(RetinexConfig(sigma=sigma))
    assert k.shape == (2 * math.ceil(3 * sigma) + 1,) * 2
    assert k.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.array_equal(k, k[::-1, :]) and np.array_equal(k, k[:, ::-1])
    assert np.array_equal(k, k.T)


@pytest.mark.parametrize("kwargs", [{"sigma": 0}, {"sigma": -1}, {"kernel_radius": -1}, {"rescale": "clip"}])
def test_config_errors(kwargs):
    with pytest.raises(ValueError):
        RetinexConfig(**kwargs)


def test_blur_matches_direct_reflect_convolution(rng):
    data = rng.uniform(0, 255, (9, 11))
    cfg = RetinexConfig(sigma=1.5, kernel_radius=3)
    k = gaussian_kernel(cfg)
    pad = np.pad(data, 3, mode="reflect")
    direct = np.array([[np.sum(k * pad[r:r + 7, c:c + 7]) for c in range(11)] for r in range(9)])
    assert np.allclose(blur(data, cfg), direct, atol=1e-10)


def test_constant_image_gives_zero_field():
    img = GrayImage.from_array(np.full((20, 30), 128.0))
    raw = ssr_log_ratio(img, RetinexConfig(sigma=3))
    assert np.abs(raw).max() < 1e-12
    out = ssr_normalize(img, RetinexConfig(sigma=3))
    assert out.shape == (20, 30) and (out.data == 0).all()


def test_blur_preserves_constant_mean():
    data = np.full((15, 15), 42.0)
    assert blur(data, RetinexConfig(sigma=2)).mean() == pytest.approx(42.0, abs=1e-12)


def test_single_bright_pixel_peak_stays_put():
    data = np.full((41, 37), 10.0)
    data[17, 23] = 250.0
    out = ssr_normalize(GrayImage.from_array(data), RetinexConfig(sigma=4))
    assert np.unravel_index(np.argmax(out.data), out.shape) == (17, 23)
    assert out.data.max() == pytest.approx(255.0)


def test_output_range_and_finite(rng):
    data = rng.uniform(0, 255, (32, 32))
    data[0, 0] = 0.0
    out = ssr_normalize(GrayImage.from_array(data), RetinexConfig(sigma=5))
    assert np.isfinite(out.data).all()
    assert out.data.min() == 0.0 and out.data.max() == pytest.approx(255.0)


def test_rescale_none_returns_raw_log_ratio(rng):
    img = GrayImage.from_array(rng.uniform(0, 255, (16, 16)))
    cfg = RetinexConfig(sigma=2, rescale="none")
    assert np.array_equal(ssr_normalize(img, cfg).data, ssr_log_ratio(img, cfg))


def test_global_scaling_error_shrinks_with_intensity(rng):
    base = rng.uniform(1, 2, (24, 24))
    cfg = RetinexConfig(sigma=3, rescale="none")
    devs = []
    for level in (10.0, 1e3, 1e5):
        a = ssr_log_ratio(GrayImage.from_array(base * level), cfg)
        b = ssr_log_ratio(GrayImage.from_array(base * level * 3.0), cfg)
        devs.append(np.abs(a - b).max())
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-4


def test_smooth_gain_ramp_is_mostly_removed(rng):
    from scipy.ndimage import gaussian_filter

    data = 120 + 40 * gaussian_filter(rng.normal(size=(128, 128)), 2) / 0.14
    data = np.clip(data, 5, 250)
    gain = np.linspace(0.6, 1.4, 128)[None, :]
    cfg = RetinexConfig(sigma=30)
    a = ssr_normalize(GrayImage.from_array(data), cfg).data
    b = ssr_normalize(GrayImage.from_array(data * gain), cfg).data
    raw_dev = np.abs(data * gain - data).max()
    assert np.abs(a - b).max() < 0.1 * 255
    assert np.abs(a - b).max() < raw_dev


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 20), st.integers(1, 20), st.floats(0.3, 40.0))
def test_shape_and_finiteness_property(h, w, sigma):
    rng = np.random.default_rng(h * 100 + w)
    img = GrayImage.from_array(rng.uniform(0, 255, (h, w)))
    out = ssr_normalize(img, RetinexConfig(sigma=sigma))
    assert out.shape == (h, w) and np.isfinite(out.data).all()
