"""Rust-candidate masks from calibrated HSV intervals, plus mask fusion."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class Fusion(Enum):
    """How the color mask combines with the threshold mask."""

    COLOR_ONLY = "color"
    AND_WITH_THRESHOLD = "and"
    OR_WITH_THRESHOLD = "or"


@dataclass(frozen=True)
class HsvRange:
    """Inclusive interval box in HSV space; h_lo > h_hi wraps through 0 degrees."""

    h_lo: float
    h_hi: float
    s_lo: float
    s_hi: float
    v_lo: float
    v_hi: float

    def __post_init__(self):
        for name in ("h_lo", "h_hi"):
            h = getattr(self, name)
            if not 0.0 <= h < 360.0:
                raise ValueError(f"{name}={h} outside [0, 360)")
        if not 0.0 <= self.s_lo <= self.s_hi <= 1.0:
            raise ValueError(f"saturation interval [{self.s_lo}, {self.s_hi}] invalid")
        if not 0.0 <= self.v_lo <= self.v_hi <= 1.0:
            raise ValueError(f"value interval [{self.v_lo}, {self.v_hi}] invalid")

    @property
    def wraps(self) -> bool:
        return self.h_lo > self.h_hi


@dataclass(frozen=True)
class FilterConfig:
    ranges: tuple[HsvRange, ...]
    fusion: Fusion = Fusion.AND_WITH_THRESHOLD

    def __post_init__(self):
        object.__setattr__(self, "ranges", tuple(self.ranges))
        if not self.ranges:
            raise ValueError("at least one HSV range is required")


def default_ranges() -> tuple[HsvRange, ...]:
    """Starting rust band: light red through orange, saturated, mid value."""
    return (HsvRange(h_lo=340.0, h_hi=30.0, s_lo=0.35, s_hi=1.0, v_lo=0.15, v_hi=0.95),)


def in_range(p, r: HsvRange) -> bool:
    """Membership of one HSV pixel in one interval box."""
    h, s, v = p
    if not (r.s_lo <= s <= r.s_hi and r.v_lo <= v <= r.v_hi):
        return False
    if r.wraps:
        return h >= r.h_lo or h <= r.h_hi
    return r.h_lo <= h <= r.h_hi


def apply_ranges(hsv: np.ndarray, config: FilterConfig) -> np.ndarray:
    """Per-pixel union of range memberships over an (H, W, 3) HSV image."""
    if hsv.ndim != 3 or hsv.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) HSV image, got shape {hsv.shape}")
    h = hsv[..., 0]
    s = hsv[..., 1]
    v = hsv[..., 2]
    mask = np.zeros(hsv.shape[:2], dtype=bool)
    for r in config.ranges:
        if r.wraps:
            hue_ok = (h >= r.h_lo) | (h <= r.h_hi)
        else:
            hue_ok = (h >= r.h_lo) & (h <= r.h_hi)
        mask |= hue_ok & (s >= r.s_lo) & (s <= r.s_hi) & (v >= r.v_lo) & (v <= r.v_hi)
    return mask


def fuse_masks(color: np.ndarray, threshold: np.ndarray | None, mode: Fusion) -> np.ndarray:
    """Combine the color mask with the threshold mask.

    threshold may be None only for COLOR_ONLY, where it is not consulted.
    """
    if mode is Fusion.COLOR_ONLY:
        return color.copy()
    if threshold is None:
        raise ValueError(f"fusion mode {mode.value} requires a threshold mask")
    if color.shape != threshold.shape:
        raise ValueError(f"mask shapes differ: {color.shape} vs {threshold.shape}")
    if mode is Fusion.AND_WITH_THRESHOLD:
        return color & threshold
    return color | threshold
