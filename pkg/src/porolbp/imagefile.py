"""PNM (P2/P5/P3/P6) and PNG reading, binary PGM writing.

8-bit P5 round-trips bit-exactly.  Color inputs are reduced to luma with
``round(0.299 R + 0.587 G + 0.114 B)``.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import FormatError
from .imagebuf import GrayImage

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def luma(rgb: np.ndarray) -> np.ndarray:
    rgb = np.asarray(rgb, dtype=np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.floor(y + 0.5)


def _pnm_tokens(buf: bytes, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments.

    Returns the tokens and the offset just past the single whitespace byte
    that terminates the last one.
    """
    tokens = []
    i = 0
    n = len(buf)
    while len(tokens) < count:
        while i < n and buf[i:i + 1].isspace():
            i += 1
        if i < n and buf[i:i + 1] == b"#":
            while i < n and buf[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        start = i
        while i < n and not buf[i:i + 1].isspace() and buf[i:i + 1] != b"#":
            i += 1
        if start == i:
            raise FormatError("truncated PNM header")
        tokens.append(buf[start:i])
    return tokens, i + 1


def decode_pnm(buf: bytes) -> np.ndarray:
    magic = buf[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise FormatError(f"unsupported PNM magic {magic!r}")
    try:
        tokens, offset = _pnm_tokens(buf[2:], 3)
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise FormatError(f"malformed PNM header: {exc}") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise FormatError(f"bad PNM geometry {width}x{height} maxval {maxval}")
    channels = 3 if magic in (b"P3", b"P6") else 1
    count = width * height * channels
    body = buf[2 + offset:]
    if magic in (b"P5", b"P6"):
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(body) < need:
            raise FormatError(f"truncated PNM data: {len(body)} of {need} bytes")
        values = np.frombuffer(body[:need], dtype=dtype)
    else:
        try:
            values = np.array(body.split()[:count], dtype=np.int64)
        except ValueError:
            raise FormatError("non-numeric sample in ASCII PNM") from None
        if values.size < count:
            raise FormatError("truncated ASCII PNM data")
    if values.max(initial=0) > maxval:
        raise FormatError("sample exceeds maxval")
    values = values.astype(np.float64)
    if channels == 3:
        return luma(values.reshape(height, width, 3))
    return values.reshape(height, width)


def read_image(path: str | os.PathLike) -> GrayImage:
    """Load a grayscale image from a PNM or PNG file."""
    with open(path, "rb") as fh:
        buf = fh.read()
    if buf.startswith(_PNG_MAGIC):
        return GrayImage.from_array(_decode_png(path))
    return GrayImage.from_array(decode_pnm(buf))


def _decode_png(path) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError:  # pragma: no cover - Pillow is optional
        raise FormatError("PNG input requires Pillow") from None
    with Image.open(path) as im:
        if im.mode in ("L", "I;16", "I"):
            return np.asarray(im, dtype=np.float64)
        if im.mode == "P":
            im = im.convert("RGB")
        arr = np.asarray(im, dtype=np.float64)
        if arr.ndim == 2:
            return arr
        if arr.shape[2] == 2:  # LA
            return arr[..., 0]
        return luma(arr[..., :3])


def to_uint8(data: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(data), 0, 255).astype(np.uint8)


def encode_pgm(data: np.ndarray) -> bytes:
    data = to_uint8(data)
    h, w = data.shape
    return b"P5\n%d %d\n255\n" % (w, h) + data.tobytes()


def write_pgm(path: str | os.PathLike, img) -> None:
    """Write a binary 8-bit PGM; samples are rounded and clamped to [0, 255]."""
    data = img.data if isinstance(img, GrayImage) else np.asarray(img)
    payload = encode_pgm(data)
    with open(path, "wb") as fh:
        fh.write(payload)
