"""RGB/HSV conversion and saturation-plane extraction."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class HsvPixel(NamedTuple):
    h: float  # degrees, [0, 360)
    s: float  # [0, 1]
    v: float  # [0, 1]


def rgb_to_hsv(r: float, g: float, b: float) -> HsvPixel:
    """Convert a single RGB triple in [0,1] to HSV (hue in degrees).

    Hue is the standard angular case analysis (red 0, green 120, blue 240);
    when max == min the hue is defined as 0. A hue that rounds to exactly
    360 wraps to 0 so the half-open interval [0, 360) holds.
    """
    for name, c in (("r", r), ("g", g), ("b", b)):
        if not 0.0 <= c <= 1.0:
            raise ValueError(f"channel {name}={c} outside [0, 1]")
    maxc = max(r, g, b)
    minc = min(r, g, b)
    delta = maxc - minc
    if delta == 0.0:
        h = 0.0
    elif maxc == r and g >= b:
        h = 60.0 * (g - b) / delta
    elif maxc == r:
        h = 60.0 * (g - b) / delta + 360.0
    elif maxc == g:
        h = 60.0 * (b - r) / delta + 120.0
    else:
        h = 60.0 * (r - g) / delta + 240.0
    if h >= 360.0:
        h = 0.0
    s = 0.0 if maxc == 0.0 else 1.0 - minc / maxc
    return HsvPixel(h, s, maxc)


def hsv_to_rgb(p: HsvPixel) -> tuple[float, float, float]:
    """Inverse of rgb_to_hsv (sector decomposition)."""
    h, s, v = p
    if s == 0.0:
        return (v, v, v)
    h60 = h / 60.0
    sector = int(h60) % 6
    f = h60 - int(h60)
    pp = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    if sector == 0:
        return (v, t, pp)
    if sector == 1:
        return (q, v, pp)
    if sector == 2:
        return (pp, v, t)
    if sector == 3:
        return (pp, q, v)
    if sector == 4:
        return (t, pp, v)
    return (v, pp, q)


def rgb_planes_to_hsv(r: np.ndarray, g: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized rgb_to_hsv over arrays; identical arithmetic per element."""
    r = np.asarray(r, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    maxc = np.maximum(np.maximum(r, g), b)
    minc = np.minimum(np.minimum(r, g), b)
    delta = maxc - minc
    gray = delta == 0.0
    r_hi = (maxc == r) & ~gray
    g_hi = (maxc == g) & ~gray & ~r_hi
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.select(
            [gray, r_hi & (g >= b), r_hi, g_hi],
            [
                0.0,
                60.0 * (g - b) / delta,
                60.0 * (g - b) / delta + 360.0,
                60.0 * (b - r) / delta + 120.0,
            ],
            default=60.0 * (r - g) / delta + 240.0,
        )
        s = np.where(maxc == 0.0, 0.0, 1.0 - minc / maxc)
    h = np.where(h >= 360.0, 0.0, h)
    return h, s, maxc


def hsv_planes_to_rgb(h: np.ndarray, s: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized hsv_to_rgb over arrays."""
    h = np.asarray(h, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    h60 = h / 60.0
    floor = np.floor(h60)
    sector = floor.astype(np.int64) % 6
    f = h60 - floor
    pp = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    r = np.choose(sector, [v, q, pp, pp, t, v])
    g = np.choose(sector, [t, v, v, q, pp, pp])
    b = np.choose(sector, [pp, pp, t, v, v, q])
    zero_s = s == 0.0
    return (
        np.where(zero_s, v, r),
        np.where(zero_s, v, g),
        np.where(zero_s, v, b),
    )


def rgb_image_to_hsv(image: np.ndarray) -> np.ndarray:
    """Convert an (H, W, 3) RGB image in [0,1] to an (H, W, 3) HSV image."""
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) image, got shape {image.shape}")
    h, s, v = rgb_planes_to_hsv(image[..., 0], image[..., 1], image[..., 2])
    return np.stack([h, s, v], axis=-1)


def extract_saturation(hsv: np.ndarray) -> np.ndarray:
    """Return the saturation channel of an HSV image as its own plane."""
    if hsv.ndim != 3 or hsv.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) HSV image, got shape {hsv.shape}")
    return np.ascontiguousarray(hsv[..., 1])
