"""Seeded synthetic stone-like textures with disc pores and exact truth masks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from .detector import DefectPattern
from .errors import GeometryError
from .imagebuf import GrayImage

TEXTURE_MEAN = 120.0


@dataclass(frozen=True)
class Pore:
    row: float
    col: float
    radius: float


@dataclass(frozen=True)
class SynthResult:
    image: GrayImage
    truth: DefectPattern
    pores: tuple[Pore, ...]


def periodic_texture(height: int, width: int, rng: np.random.Generator,
                     amplitude: float = 40.0, noise: float = 1.0, tile: int = 8) -> np.ndarray:
    """A random Latin square of ``tile`` evenly spaced gray levels, tiled, plus white noise.

    Every horizontal or vertical run of ``tile`` pixels holds ``tile`` distinct
    levels ``2 * amplitude / (tile - 1)`` apart, so a smooth gain field or the
    retinex surround cannot reorder neighbors and the period divides the
    default 16 px window and 8 px training stride.
    """
    cyclic = (np.arange(tile)[:, None] + np.arange(tile)[None, :]) % tile
    square = rng.permutation(tile)[cyclic[rng.permutation(tile)][:, rng.permutation(tile)]]
    levels = TEXTURE_MEAN + amplitude * np.linspace(-1.0, 1.0, tile)
    field = np.tile(levels[square], (height // tile + 1, width // tile + 1))[:height, :width]
    return field + rng.normal(0.0, noise, (height, width))


def blotchy_texture(height: int, width: int, rng: np.random.Generator,
                    amplitude: float = 40.0, noise: float = 1.0) -> np.ndarray:
    """Two octaves of smoothed Gaussian noise plus white noise."""
    field = np.zeros((height, width))
    for sigma, weight in ((6.0, 0.7), (2.0, 0.3)):
        layer = gaussian_filter(rng.normal(size=(height, width)), sigma, mode="wrap")
        field += weight * layer / layer.std()
    field *= amplitude / 2.0
    return TEXTURE_MEAN + field + rng.normal(0.0, noise, (height, width))


TEXTURES = {"periodic": periodic_texture, "blotchy": blotchy_texture}


def disc_mask(height: int, width: int, pore: Pore) -> np.ndarray:
    """Pixels whose centers lie within ``radius`` of the pore center."""
    yy, xx = np.mgrid[0:height, 0:width]
    return (yy - pore.row) ** 2 + (xx - pore.col) ** 2 <= pore.radius ** 2


def random_pores(height: int, width: int, count: int, radius_range, rng) -> list[Pore]:
    """Non-overlapping discs fully inside the image."""
    lo, hi = radius_range
    pores: list[Pore] = []
    for _ in range(count):
        for _attempt in range(1000):
            r = int(rng.integers(lo, hi + 1))
            if 2 * r + 1 > min(height, width):
                raise GeometryError(f"pore radius {r} does not fit a {width}x{height} image")
            p = Pore(float(rng.integers(r, height - r)), float(rng.integers(r, width - r)), float(r))
            if all((p.row - q.row) ** 2 + (p.col - q.col) ** 2 > (p.radius + q.radius + 2) ** 2
                   for q in pores):
                pores.append(p)
                break
        else:
            raise GeometryError(f"could not place {count} non-overlapping pores")
    return pores


def synthesize(kind: str = "periodic", size: int | tuple[int, int] = 512, pores=0,
               radius_range=(10, 20), contrast: float = 60.0, seed: int = 0,
               noise: float = 1.0, amplitude: float = 40.0,
               pore_noise: float | None = None) -> SynthResult:
    """Generate a texture, darken flat disc pores into it and return the truth mask.

    ``pores`` is either a count (random non-overlapping placement) or an
    explicit sequence of :class:`Pore`.  Pores are filled with the flat value
    ``TEXTURE_MEAN - contrast`` plus ``pore_noise`` (defaults to ``noise``).
    The clean texture depends only on ``kind``, ``size``, ``seed``,
    ``amplitude`` and ``noise``, so ``pores=0`` with the same seed gives the
    defect-free twin of any pored image.
    """
    if kind not in TEXTURES:
        raise ValueError(f"unknown texture kind {kind!r}; choose from {sorted(TEXTURES)}")
    height, width = (size, size) if np.isscalar(size) else size
    if height < 1 or width < 1:
        raise GeometryError("texture size must be positive")
    tex_rng, pore_rng = (np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(2))
    data = TEXTURES[kind](height, width, tex_rng, amplitude=amplitude, noise=noise)
    if np.isscalar(pores):
        placed = random_pores(height, width, int(pores), radius_range, pore_rng)
    else:
        placed = list(pores)
    truth = np.zeros((height, width), dtype=bool)
    for p in placed:
        if not (p.radius > 0 and p.radius <= p.row <= height - 1 - p.radius
                and p.radius <= p.col <= width - 1 - p.radius):
            raise GeometryError(f"pore {p} extends outside the {width}x{height} image")
        truth |= disc_mask(height, width, p)
    fill = np.full(np.count_nonzero(truth), TEXTURE_MEAN - contrast)
    sigma = noise if pore_noise is None else pore_noise
    if sigma > 0:
        fill += pore_rng.normal(0.0, sigma, fill.size)
    data[truth] = np.maximum(fill, 0.0)
    return SynthResult(GrayImage.from_array(data), DefectPattern.from_array(truth), tuple(placed))
