"""Between-class-variance thresholding of a [0,1] plane, with one refinement pass."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

BINS = 256


class DegenerateHistogramError(ValueError):
    """Histogram has fewer than two occupied bins: no meaningful split exists."""


@dataclass(frozen=True)
class ThresholdResult:
    t_star: int                             # split index in [1, 255]
    sigma_b2: float                         # between-class variance at t_star, bin units
    class_variances: tuple[float, float]    # (low class, high class) at t_star


def quantize_unit(plane: np.ndarray) -> np.ndarray:
    """Map [0,1] values to bin indices: min(255, floor(v * 256))."""
    plane = np.asarray(plane, dtype=np.float64)
    if plane.size and (plane.min() < 0.0 or plane.max() > 1.0):
        raise ValueError("plane values must lie in [0, 1]")
    return np.minimum((plane * BINS).astype(np.int64), BINS - 1)


def build_histogram(plane: np.ndarray) -> np.ndarray:
    """256-bin count histogram of a [0,1] plane."""
    q = quantize_unit(plane)
    return np.bincount(q.ravel(), minlength=BINS)


def otsu_threshold(hist: np.ndarray) -> ThresholdResult:
    """Smallest T in [1,255] maximizing the between-class variance.

    Classes split as [0,T) and [T,256); an empty class contributes zero to
    the objective. Ties resolve to the smallest T.
    """
    hist = np.asarray(hist)
    if hist.shape != (BINS,):
        raise ValueError(f"expected a {BINS}-bin histogram, got shape {hist.shape}")
    total = int(hist.sum())
    if total <= 0:
        raise ValueError("histogram is empty")
    if np.count_nonzero(hist) < 2:
        raise DegenerateHistogramError("histogram has a single occupied bin")

    p = hist / total
    levels = np.arange(BINS, dtype=np.float64)
    cum_p = np.cumsum(p)
    cum_m = np.cumsum(p * levels)
    mu = cum_m[-1]

    # index k corresponds to T = k + 1
    p0 = cum_p[:-1]
    m0 = cum_m[:-1]
    p1 = 1.0 - p0
    with np.errstate(divide="ignore", invalid="ignore"):
        mu0 = m0 / p0
        mu1 = (mu - m0) / p1
        sigma_b2 = np.where(p0 > 0.0, p0 * (mu0 - mu) ** 2, 0.0) + np.where(
            p1 > 0.0, p1 * (mu1 - mu) ** 2, 0.0
        )
    t_star = int(np.argmax(sigma_b2)) + 1

    low = p[:t_star]
    high = p[t_star:]
    lo_levels = levels[:t_star]
    hi_levels = levels[t_star:]
    mu_low = float((low * lo_levels).sum() / low.sum())
    mu_high = float((high * hi_levels).sum() / high.sum())
    var_low = float((low * (lo_levels - mu_low) ** 2).sum() / low.sum())
    var_high = float((high * (hi_levels - mu_high) ** 2).sum() / high.sum())
    return ThresholdResult(
        t_star=t_star,
        sigma_b2=float(sigma_b2[t_star - 1]),
        class_variances=(var_low, var_high),
    )


def iterated_threshold(plane: np.ndarray) -> np.ndarray:
    """Binary mask from one threshold pass plus one refinement pass.

    The refinement reruns the scan inside whichever first-pass class has the
    smaller variance. Refining the high class tightens the mask to values at
    or above the refined split; refining the low class leaves the first-pass
    mask unchanged (background substructure does not alter foreground
    membership). A plane with a single occupied bin yields an all-false mask
    and a warning.
    """
    q = quantize_unit(plane)
    hist = np.bincount(q.ravel(), minlength=BINS)
    if np.count_nonzero(hist) < 2:
        warnings.warn("degenerate plane: single gray level, returning empty mask", RuntimeWarning)
        return np.zeros(plane.shape, dtype=bool)

    first = otsu_threshold(hist)
    var_low, var_high = first.class_variances
    t_final = first.t_star
    if var_high < var_low:
        sub = hist.copy()
        sub[: first.t_star] = 0
        if np.count_nonzero(sub) >= 2:
            t_final = otsu_threshold(sub).t_star
    return q >= t_final
