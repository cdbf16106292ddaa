"""Text serialization of trained models.

One ``key = value`` pair per line, floats in 17-digit scientific notation
(exact round trip for float64), and a trailing SHA-256 over every preceding
line.  Example::

    # porolbp model
    format_version = 1
    stone_type = cream-travertine
    ...
    base_x = 1.23...e-01 4.56...e-02 ...
    checksum = sha256:9f2c...
"""

from __future__ import annotations

import hashlib
import os

import numpy as np

from .detector import FORMAT_VERSION, DetectorConfig, TrainedModel
from .errors import FormatError
from .features import FeatureVector
from .retinex import RetinexConfig

HEADER = "# porolbp model"


def _f(x: float) -> str:
    return f"{float(x):.17e}"


def _vec(v: np.ndarray) -> str:
    return " ".join(_f(x) for x in v)


def dumps(model: TrainedModel) -> str:
    if "\n" in model.stone_type or "\r" in model.stone_type:
        raise ValueError("stone type may not contain line breaks")
    cfg = model.config
    ret = cfg.retinex
    fields = [
        ("format_version", str(model.format_version)),
        ("stone_type", model.stone_type),
        ("segment_length", str(cfg.segment_length)),
        ("uniformity_threshold", "auto" if cfg.uniformity_threshold is None else _f(cfg.uniformity_threshold)),
        ("window", str(cfg.window)),
        ("train_overlap", "auto" if cfg.train_overlap is None else str(cfg.train_overlap)),
        ("retinex", "off" if ret is None else "on"),
    ]
    if ret is not None:
        fields += [
            ("retinex_sigma", _f(ret.sigma)),
            ("retinex_kernel_radius", "auto" if ret.kernel_radius is None else str(ret.kernel_radius)),
            ("retinex_rescale", ret.rescale),
        ]
    fields += [
        ("threshold_x", _f(model.threshold_x)),
        ("threshold_y", _f(model.threshold_y)),
        ("base_x_count", str(model.base_x.label_count)),
        ("base_x", _vec(model.base_x.probs)),
        ("base_y_count", str(model.base_y.label_count)),
        ("base_y", _vec(model.base_y.probs)),
    ]
    body = HEADER + "\n" + "".join(f"{k} = {v}\n" for k, v in fields)
    digest = hashlib.sha256(body.encode("utf-8")).hexdigest()
    return body + f"checksum = sha256:{digest}\n"


def loads(text: str) -> TrainedModel:
    lines = text.splitlines(keepends=True)
    if not lines or lines[0].rstrip("\n") != HEADER:
        raise FormatError("not a porolbp model file")
    last = lines[-1].strip()
    if not last.startswith("checksum = sha256:"):
        raise FormatError("model file has no checksum line")
    body = "".join(lines[:-1])
    if hashlib.sha256(body.encode("utf-8")).hexdigest() != last.split(":", 1)[1]:
        raise FormatError("model file checksum mismatch (corrupted or edited)")
    kv = {}
    for line in lines[1:-1]:
        key, sep, value = line.partition(" = ")
        if not sep:
            raise FormatError(f"malformed model line: {line.strip()!r}")
        kv[key] = value.rstrip("\n")
    try:
        version = int(kv["format_version"])
        if version != FORMAT_VERSION:
            raise FormatError(f"unsupported model format_version {version}")
        retinex = None
        if kv["retinex"] == "on":
            radius = kv["retinex_kernel_radius"]
            retinex = RetinexConfig(
                sigma=float(kv["retinex_sigma"]),
                kernel_radius=None if radius == "auto" else int(radius),
                rescale=kv["retinex_rescale"],
            )
        elif kv["retinex"] != "off":
            raise FormatError(f"bad retinex flag {kv['retinex']!r}")
        ut = kv["uniformity_threshold"]
        cfg = DetectorConfig(
            window=int(kv["window"]),
            segment_length=int(kv["segment_length"]),
            uniformity_threshold=None if ut == "auto" else float(ut),
            train_overlap=None if kv["train_overlap"] == "auto" else int(kv["train_overlap"]),
            retinex=retinex,
        )
        base_x = FeatureVector(np.array(kv["base_x"].split(), dtype=np.float64), int(kv["base_x_count"]))
        base_y = FeatureVector(np.array(kv["base_y"].split(), dtype=np.float64), int(kv["base_y_count"]))
        return TrainedModel(
            stone_type=kv["stone_type"],
            base_x=base_x,
            base_y=base_y,
            threshold_x=float(kv["threshold_x"]),
            threshold_y=float(kv["threshold_y"]),
            config=cfg,
            format_version=version,
        )
    except KeyError as exc:
        raise FormatError(f"model file missing field {exc}") from None
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"bad model field: {exc}") from None


def save(model: TrainedModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(model))


def load(path: str | os.PathLike) -> TrainedModel:
    with open(path, encoding="utf-8", newline="") as fh:
        return loads(fh.read())
