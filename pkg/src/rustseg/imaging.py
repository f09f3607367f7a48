"""Image decoding/encoding and the raster conventions shared by every stage.

Images are numpy arrays: RGB as float64 (H, W, 3) in [0,1], single planes as
float64 (H, W), masks as bool (H, W). 8-bit channels normalize by /255,
16-bit grayscale by /65535; alpha channels are dropped on load.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image

from .dbscan import ClusterSet

HIGHLIGHT = (1.0, 0.0, 0.0)


def require_rgb(image: np.ndarray) -> None:
    if not isinstance(image, np.ndarray) or image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) RGB array")
    if image.size == 0:
        raise ValueError("image has zero pixels")
    if image.min() < 0.0 or image.max() > 1.0:
        raise ValueError("RGB channels must lie in [0, 1]")


def load_rgb(path) -> np.ndarray:
    """Decode a PNG or JPEG file into a float64 (H, W, 3) array in [0,1]."""
    try:
        with Image.open(path) as im:
            im.load()
            if im.width == 0 or im.height == 0:
                raise ValueError(f"zero-dimension image: {path}")
            if im.mode in ("I", "I;16", "I;16B", "I;16L"):
                plane = np.asarray(im, dtype=np.float64) / 65535.0
                return np.stack([plane, plane, plane], axis=-1)
            rgb = im.convert("RGB")
            return np.asarray(rgb, dtype=np.float64) / 255.0
    except FileNotFoundError:
        raise
    except ValueError:
        raise
    except Exception as exc:
        raise ValueError(f"cannot decode image {path}: {exc}") from exc


def rgb_png_bytes(image: np.ndarray) -> bytes:
    require_rgb(image)
    data = np.clip(np.rint(image * 255.0), 0, 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(data, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def save_rgb(image: np.ndarray, path) -> None:
    Path(path).write_bytes(rgb_png_bytes(image))


def mask_png_bytes(mask: np.ndarray) -> bytes:
    """Encode a bool mask as an 8-bit grayscale PNG (true -> 255)."""
    if mask.ndim != 2 or mask.dtype != bool:
        raise ValueError("expected a 2-D bool mask")
    data = np.where(mask, np.uint8(255), np.uint8(0))
    buf = io.BytesIO()
    Image.fromarray(data, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def save_mask(mask: np.ndarray, path) -> None:
    Path(path).write_bytes(mask_png_bytes(mask))


def load_mask(path) -> np.ndarray:
    """Decode a grayscale mask PNG back to bool (>=128 -> true)."""
    with Image.open(path) as im:
        plane = np.asarray(im.convert("L"))
    return plane >= 128


def render_overlay(
    image: np.ndarray,
    clusters: ClusterSet,
    highlight: tuple[float, float, float] = HIGHLIGHT,
    blend: float = 0.5,
) -> np.ndarray:
    """Alpha-blend retained cluster pixels toward the highlight color.

    Pixels outside cluster membership are returned unchanged.
    """
    require_rgb(image)
    if not 0.0 <= blend <= 1.0:
        raise ValueError(f"blend must lie in [0, 1], got {blend}")
    out = image.copy()
    retained = clusters.retained_points()
    if retained.size == 0:
        return out
    xs = retained[:, 0]
    ys = retained[:, 1]
    h, w = image.shape[:2]
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= w or ys.max() >= h:
        raise ValueError("cluster points fall outside the image bounds")
    color = np.asarray(highlight, dtype=np.float64)
    out[ys, xs] = (1.0 - blend) * out[ys, xs] + blend * color
    return out
