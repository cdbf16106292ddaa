import sys

import numpy as np
import pytest

from porolbp import GrayImage, kernels


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_image(rng, h, w, levels=256):
    return GrayImage.from_array(rng.integers(0, levels, (h, w)).astype(np.float64))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
