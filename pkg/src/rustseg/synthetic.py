"""Synthetic painted-board fixtures with exact ground-truth rust masks."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .colorspace import hsv_planes_to_rgb
from .imaging import save_mask, save_rgb


@dataclass(frozen=True)
class BoardParams:
    """Sampling ranges for one synthetic board.

    The background imitates gray paint; patches are rust-hued with per-pixel
    hue texture and mild per-pixel saturation/value mottling around a
    per-patch base, so every patch pixel stays inside the stated HSV bands.
    """

    size: int = 512
    patch_count: tuple[int, int] = (1, 5)
    patch_px: tuple[int, int] = (24, 64)
    base_rgb: tuple[float, float, float] = (0.47, 0.49, 0.51)
    noise: float = 0.03
    hue_band: tuple[float, float] = (5.0, 30.0)
    sat_band: tuple[float, float] = (0.5, 0.9)
    val_band: tuple[float, float] = (0.2, 0.7)
    margin: int = 16


@dataclass(frozen=True)
class StationObject:
    name: str
    image: np.ndarray
    truth: np.ndarray
    has_rust: bool


def _patch_region(rng: np.random.Generator, params: BoardParams) -> np.ndarray:
    """Bool stamp for one patch: a rectangle or an ellipse."""
    w = int(rng.integers(params.patch_px[0], params.patch_px[1] + 1))
    h = int(rng.integers(params.patch_px[0], params.patch_px[1] + 1))
    if rng.random() < 0.5:
        return np.ones((h, w), dtype=bool)
    yy, xx = np.mgrid[0:h, 0:w]
    cy, cx = (h - 1) / 2.0, (w - 1) / 2.0
    return ((xx - cx) / (w / 2.0)) ** 2 + ((yy - cy) / (h / 2.0)) ** 2 <= 1.0


def _paint_patch(rng, image, truth, region, params: BoardParams) -> None:
    size = params.size
    h, w = region.shape
    y0 = int(rng.integers(params.margin, size - params.margin - h + 1))
    x0 = int(rng.integers(params.margin, size - params.margin - w + 1))
    n = int(region.sum())
    jitter = 0.05
    s_lo, s_hi = params.sat_band
    v_lo, v_hi = params.val_band
    hue = rng.uniform(params.hue_band[0], params.hue_band[1], size=n)
    sat = rng.uniform(s_lo + jitter, s_hi - jitter) + rng.uniform(-jitter, jitter, size=n)
    val = rng.uniform(v_lo + jitter, v_hi - jitter) + rng.uniform(-jitter, jitter, size=n)
    r, g, b = hsv_planes_to_rgb(hue, sat, val)
    window = image[y0 : y0 + h, x0 : x0 + w]
    window[region] = np.column_stack([r, g, b])
    truth[y0 : y0 + h, x0 : x0 + w][region] = True


def rust_board(
    seed: int,
    params: BoardParams = BoardParams(),
    n_patches: int | None = None,
    min_rust_px: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """One board image plus its exact rust mask.

    n_patches overrides the sampled patch count (0 gives a clean board);
    min_rust_px keeps adding patches until the mask reaches that area.
    """
    rng = np.random.default_rng(seed)
    size = params.size
    base = np.asarray(params.base_rgb, dtype=np.float64)
    image = base + rng.uniform(-params.noise, params.noise, size=(size, size, 3))
    truth = np.zeros((size, size), dtype=bool)
    if n_patches is None:
        n_patches = int(rng.integers(params.patch_count[0], params.patch_count[1] + 1))
    for _ in range(n_patches):
        _paint_patch(rng, image, truth, _patch_region(rng, params), params)
    while truth.sum() < min_rust_px:
        _paint_patch(rng, image, truth, _patch_region(rng, params), params)
    return image, truth


def station_set(seed: int, size: int = 512) -> list[StationObject]:
    """Seven station objects: four rusty (>= 0.5% rust area), three clean."""
    rusty_params = BoardParams(size=size, patch_px=(40, 72))
    clean_params = BoardParams(size=size)
    min_rust = int(np.ceil(0.007 * size * size))
    objects = []
    for k in range(7):
        has_rust = k < 4
        name = f"station_{k:02d}_{'rusty' if has_rust else 'clean'}"
        if has_rust:
            image, truth = rust_board(
                seed * 101 + k, rusty_params, n_patches=3, min_rust_px=min_rust
            )
        else:
            image, truth = rust_board(seed * 101 + k, clean_params, n_patches=0)
        objects.append(StationObject(name=name, image=image, truth=truth, has_rust=has_rust))
    return objects


def write_fixture(directory, name: str, image: np.ndarray, truth: np.ndarray) -> tuple[Path, Path]:
    """Persist a board as 8-bit PNG plus its ground-truth mask PNG."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    img_path = directory / f"{name}.png"
    truth_path = directory / f"{name}.truth.png"
    save_rgb(image, img_path)
    save_mask(truth, truth_path)
    return img_path, truth_path


def iou(mask: np.ndarray, truth: np.ndarray) -> float:
    """Intersection over union of two masks; empty union counts as 1."""
    union = int(np.logical_or(mask, truth).sum())
    if union == 0:
        return 1.0
    inter = int(np.logical_and(mask, truth).sum())
    return inter / union
