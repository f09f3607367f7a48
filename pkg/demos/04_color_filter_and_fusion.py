"""
HSV range filtering and mask fusion
===================================

The color filter keeps pixels whose hue/saturation/value fall inside the
calibrated rust band (the hue interval may wrap through 0 degrees). ANDing
it with the threshold mask keeps only pixels that are both rust-colored and
locally saturation-enhanced.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rustseg import (
    FilterConfig,
    Fusion,
    SsrParams,
    apply_ranges,
    default_ranges,
    extract_saturation,
    fuse_masks,
    iterated_threshold,
    linear_stretch,
    rgb_image_to_hsv,
    ssr,
)
from rustseg.synthetic import rust_board

from _output import output_dir

image, truth = rust_board(seed=13, n_patches=3, min_rust_px=3000)
hsv = rgb_image_to_hsv(image)

(band,) = default_ranges()
print(f"default band: H {band.h_lo}..{band.h_hi} (wraps), S >= {band.s_lo}, V {band.v_lo}..{band.v_hi}")

color = apply_ranges(hsv, FilterConfig(ranges=(band,)))
thresh = iterated_threshold(linear_stretch(ssr(extract_saturation(hsv), SsrParams())))

fused = {
    "color only": fuse_masks(color, thresh, Fusion.COLOR_ONLY),
    "AND threshold": fuse_masks(color, thresh, Fusion.AND_WITH_THRESHOLD),
    "OR threshold": fuse_masks(color, thresh, Fusion.OR_WITH_THRESHOLD),
}

fig, axes = plt.subplots(1, 5, figsize=(19, 4.0))
axes[0].imshow(image)
axes[0].set_title("board")
axes[1].imshow(thresh, cmap="gray")
axes[1].set_title("threshold mask")
for ax, (name, mask) in zip(axes[2:], fused.items()):
    ax.imshow(mask, cmap="gray")
    ax.set_title(f"{name} ({int(mask.sum())} px)")
for ax in axes:
    ax.set_axis_off()
fig.tight_layout()
out = output_dir() / "04_fusion.png"
fig.savefig(out, dpi=110)
print("wrote", out)
