import numpy as np
import pytest
from PIL import Image

from porolbp import FormatError, GrayImage
from porolbp.imagefile import decode_pnm, encode_pgm, luma, read_image, write_pgm


def test_p5_roundtrip_bit_exact(tmp_path, rng):
    data = rng.integers(0, 256, (13, 17)).astype(np.uint8)
    path = tmp_path / "a.pgm"
    write_pgm(path, GrayImage.from_array(data))
    raw = path.read_bytes()
    assert raw == b"P5\n17 13\n255\n" + data.tobytes()
    back = read_image(path)
    assert np.array_equal(back.data, data.astype(np.float64))
    write_pgm(tmp_path / "b.pgm", back)
    assert (tmp_path / "b.pgm").read_bytes() == raw


def test_write_rounds_and_clamps():
    out = encode_pgm(np.array([[-3.0, 0.4, 0.6, 254.6, 300.0]]))
    assert list(out[-5:]) == [0, 0, 1, 255, 255]


def test_header_comments_and_ascii():
    buf = b"P2\n# a comment\n3 2 # trailing\n255\n0 1 2\n3 4 255\n"
    assert np.array_equal(decode_pnm(buf), [[0, 1, 2], [3, 4, 255]])


def test_sixteen_bit_p5():
    vals = np.array([[0, 1000], [65535, 7]], dtype=">u2")
    buf = b"P5 2 2 65535\n" + vals.tobytes()
    assert np.array_equal(decode_pnm(buf), vals.astype(float))


def test_p6_luma():
    rgb = np.array([[[255, 0, 0], [10, 200, 30]]], dtype=np.uint8)
    buf = b"P6\n2 1\n255\n" + rgb.tobytes()
    expect = [[round(0.299 * 255), round(0.299 * 10 + 0.587 * 200 + 0.114 * 30)]]
    assert np.array_equal(decode_pnm(buf), expect)
    assert luma(np.array([0.5, 0.5, 0.5]) * 1) == 1.0  # half rounds up


@pytest.mark.parametrize("buf", [
    b"P7\n1 1\n255\n\x00",
    b"P5\n2 2\n255\n\x00\x00",
    b"P5\n0 2\n255\n",
    b"P2\n2 1\n255\n1 x\n",
    b"P2\n1 1\n10\n11\n",
    b"P5\n",
])
def test_malformed_pnm(buf):
    with pytest.raises(FormatError):
        decode_pnm(buf)


def test_png_grayscale_and_rgb(tmp_path, rng):
    gray = rng.integers(0, 256, (5, 6)).astype(np.uint8)
    Image.fromarray(gray, mode="L").save(tmp_path / "g.png")
    assert np.array_equal(read_image(tmp_path / "g.png").data, gray)
    rgb = rng.integers(0, 256, (4, 3, 3)).astype(np.uint8)
    Image.fromarray(rgb, mode="RGB").save(tmp_path / "c.png")
    assert np.array_equal(read_image(tmp_path / "c.png").data, luma(rgb))


def test_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        read_image(tmp_path / "nope.pgm")
