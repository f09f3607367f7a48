"""Single-scale Retinex on a float plane: surround blur, log ratio, stretch."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import correlate1d


@dataclass(frozen=True)
class GaussianKernel:
    """Truncated, renormalized surround kernel.

    The profile is exp(-(i^2 + j^2) / sigma^2) -- the exponent is scaled by
    sigma^2, not 2*sigma^2. weights is the full 2-D window; taps is the 1-D
    separable factor (weights == outer(taps, taps)).
    """

    radius: int
    sigma: float
    taps: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class SsrParams:
    """Surround scale and log-domain floor for the reflectance computation.

    sigma=None picks max(10, 0.05 * max(width, height)) per plane, which
    lands at the usual 80 px for full-resolution photos and shrinks safely
    for small images.
    """

    sigma: float | None = None
    epsilon_floor: float = 1e-4

    def __post_init__(self):
        if self.sigma is not None and not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not 0.0 < self.epsilon_floor <= 1e-3:
            raise ValueError(f"epsilon_floor must be in (0, 1e-3], got {self.epsilon_floor}")

    def resolve_sigma(self, height: int, width: int) -> float:
        if self.sigma is not None:
            return float(self.sigma)
        return max(10.0, 0.05 * max(height, width))


def gaussian_kernel(sigma: float, radius: int) -> GaussianKernel:
    """Build the kernel truncated at `radius` and renormalized to unit sum."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    taps = np.exp(-(offsets**2) / (sigma * sigma))
    taps /= taps.sum()
    weights = np.outer(taps, taps)
    return GaussianKernel(radius=int(radius), sigma=float(sigma), taps=taps, weights=weights)


def convolve(plane: np.ndarray, kernel: GaussianKernel) -> np.ndarray:
    """Convolve a plane with the kernel, mirror-reflecting at the borders.

    Runs as two 1-D passes; the result matches the full 2-D window definition.
    Border handling repeats the edge pixel (reflection about the image edge).
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ValueError(f"expected a nonempty 2-D plane, got shape {plane.shape}")
    h, w = plane.shape
    size = 2 * kernel.radius + 1
    if size > 2 * h or size > 2 * w:
        raise ValueError(f"kernel size {size} exceeds twice the plane extent {plane.shape}")
    out = correlate1d(plane, kernel.taps, axis=0, mode="reflect")
    return correlate1d(out, kernel.taps, axis=1, mode="reflect")


def ssr(plane: np.ndarray, params: SsrParams) -> np.ndarray:
    """Reflectance of a nonnegative plane: ln(plane) - ln(blurred plane).

    Both logarithms are floored at params.epsilon_floor so fully dark pixels
    stay finite. The surround radius is ceil(3 * sigma).
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ValueError(f"expected a nonempty 2-D plane, got shape {plane.shape}")
    if plane.min() < 0:
        raise ValueError("ssr input must be nonnegative")
    sigma = params.resolve_sigma(*plane.shape)
    kernel = gaussian_kernel(sigma, math.ceil(3.0 * sigma))
    blurred = convolve(plane, kernel)
    floor = params.epsilon_floor
    return np.log(np.maximum(plane, floor)) - np.log(np.maximum(blurred, floor))


def linear_stretch(plane: np.ndarray) -> np.ndarray:
    """Affinely remap a plane so min -> 0 and max -> 1; a constant plane -> 0.5."""
    plane = np.asarray(plane, dtype=np.float64)
    if plane.size == 0:
        raise ValueError("cannot stretch an empty plane")
    lo = plane.min()
    hi = plane.max()
    if hi == lo:
        return np.full_like(plane, 0.5)
    return (plane - lo) / (hi - lo)
