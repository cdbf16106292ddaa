import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from porolbp import FeatureVector, GeometryError, Lbp1dConfig, extract_window_features, histogram, log_likelihood_ratio
from porolbp.features import (
    check_operator_count,
    image_features,
    llr_probs,
    operator_count,
    smooth,
    windowed_counts,
)
from porolbp.lbp import label_map_1d

# 30-digit evaluation of sum S' ln(S'/M') after (v + 1e-6) / (1 + 2e-6) smoothing
LLR_HAND_SMOOTHED = 0.1308114866367579
LLR_ONE_HOT_SMOOTHED = 0.6931323650775183


def test_histogram_examples():
    assert np.array_equal(histogram([0, 0, 1, 1], 3).probs, [0.5, 0.5, 0.0])
    f = histogram([7] * 20, 9)
    assert f.probs[7] == 1.0 and f.probs.sum() == 1.0 and f.label_count == 20


@pytest.mark.parametrize("labels,size", [([], 3), ([3], 3), ([-1], 3)])
def test_histogram_errors(labels, size):
    with pytest.raises(ValueError):
        histogram(labels, size)


@given(st.lists(st.integers(0, 8), min_size=1, max_size=300))
def test_histogram_sums_to_one(labels):
    f = histogram(labels, 9)
    assert abs(f.probs.sum() - 1.0) < 1e-9
    assert (f.probs >= 0).all() and f.label_count == len(labels)


def test_constant_window_features():
    fx, fy = extract_window_features(np.full((16, 16), 90.0))
    for f in (fx, fy):
        assert f.dim == 9 and f.label_count == 144
        assert f.probs[7] == 1.0


def test_window_features_dims_and_transpose(rng):
    win = rng.integers(0, 256, (16, 16)).astype(float)
    fx, fy = extract_window_features(win)
    assert fx.label_count == fy.label_count == 144 == operator_count(16, 8)
    tx, ty = extract_window_features(win.T)
    assert tx == fy and ty == fx


def test_window_features_shift_invariant(rng):
    win = rng.integers(0, 200, (16, 16)).astype(float)
    assert extract_window_features(win) == extract_window_features(win + 55)


def test_window_features_errors_and_warning():
    with pytest.raises(GeometryError):
        extract_window_features(np.zeros((4, 4)))
    with pytest.warns(UserWarning, match="60 operators"):
        extract_window_features(np.zeros((12, 12)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert check_operator_count(16, 8) == 144


def test_windowed_counts_match_direct_extraction(rng):
    img = rng.integers(0, 8, (48, 40)).astype(float)
    origins = np.array([[0, 0], [16, 8], [32, 24], [5, 3]])
    for orient in ("horizontal", "vertical"):
        cfg = Lbp1dConfig(8, None, orient)
        counts = windowed_counts(label_map_1d(img, cfg), origins, 16, cfg)
        for (r, c), row in zip(origins, counts):
            fx, fy = extract_window_features(img[r:r + 16, c:c + 16])
            f = fx if orient == "horizontal" else fy
            assert np.array_equal(row / row.sum(), f.probs)


def test_image_features_counts_every_run(rng):
    img = rng.integers(0, 256, (20, 30)).astype(float)
    assert image_features(img, Lbp1dConfig(8)).label_count == 20 * 23
    assert image_features(img, Lbp1dConfig(8, None, "vertical")).label_count == 13 * 30


def test_llr_identity_and_hand_case():
    s = np.array([0.75, 0.25])
    assert log_likelihood_ratio(s, s) == 0.0
    assert log_likelihood_ratio(s, np.array([0.5, 0.5])) == pytest.approx(LLR_HAND_SMOOTHED, abs=1e-12)
    assert log_likelihood_ratio(s, np.array([0.5, 0.5])) == pytest.approx(0.75 * math.log(1.5) + 0.25 * math.log(0.5), abs=1e-4)


def test_llr_one_hot_smoothed_oracle():
    v = log_likelihood_ratio(np.array([1.0, 0.0]), np.array([0.5, 0.5]))
    assert v == pytest.approx(LLR_ONE_HOT_SMOOTHED, abs=1e-12)
    assert v > LLR_HAND_SMOOTHED > 0


def test_llr_accepts_feature_vectors_and_checks_dims():
    a = FeatureVector.from_counts([1, 2, 3])
    assert log_likelihood_ratio(a, a) == 0.0
    with pytest.raises(GeometryError):
        log_likelihood_ratio(a, np.array([0.5, 0.5]))


def test_smoothing_formula():
    p = np.array([1.0, 0.0, 0.0])
    assert np.allclose(smooth(p), (p + 1e-6) / (1 + 3e-6), rtol=0, atol=1e-15)
    assert smooth(p).sum() == pytest.approx(1.0, abs=1e-15)


def test_batched_llr_equals_row_by_row(rng):
    # guards the smoothing denominator: it must use the vector dimension, not the batch size
    s = rng.dirichlet(np.ones(9), size=50)
    m = rng.dirichlet(np.ones(9))
    batched = llr_probs(s, m)
    single = np.array([log_likelihood_ratio(row, m) for row in s])
    assert np.array_equal(batched, single)


@settings(max_examples=200)
@given(st.integers(2, 12), st.integers(0, 2**32 - 1))
def test_llr_gibbs_nonnegative(dim, seed):
    rng = np.random.default_rng(seed)
    s = rng.dirichlet(np.full(dim, 0.3))
    m = rng.dirichlet(np.full(dim, 0.3))
    assert log_likelihood_ratio(s, m) >= 0.0
    assert log_likelihood_ratio(m, m) == 0.0


def test_feature_vector_validation():
    with pytest.raises(ValueError):
        FeatureVector(np.array([-0.1, 1.1]), 1)
    with pytest.raises(ValueError):
        FeatureVector.from_counts([0, 0])
