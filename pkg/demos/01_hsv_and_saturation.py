"""
HSV conversion and the saturation plane
=======================================

Rust reads as saturated warm hues while painted metal stays nearly gray,
so the saturation channel separates them far better than raw RGB. This
script converts a synthetic board to HSV and shows each channel.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rustseg import extract_saturation, rgb_image_to_hsv, rgb_to_hsv
from rustseg.synthetic import rust_board

from _output import output_dir

# A few anchor conversions: red sits at 0 degrees, green at 120, blue at 240.
for rgb in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0.5, 0.25, 0.1)]:
    print(rgb, "->", rgb_to_hsv(*rgb))

image, truth = rust_board(seed=8)
hsv = rgb_image_to_hsv(image)
saturation = extract_saturation(hsv)

fig, axes = plt.subplots(1, 4, figsize=(16, 4.2))
axes[0].imshow(image)
axes[0].set_title("board")
axes[1].imshow(hsv[..., 0], cmap="twilight", vmin=0, vmax=360)
axes[1].set_title("hue (degrees)")
axes[2].imshow(saturation, cmap="gray", vmin=0, vmax=1)
axes[2].set_title("saturation")
axes[3].imshow(hsv[..., 2], cmap="gray", vmin=0, vmax=1)
axes[3].set_title("value")
for ax in axes:
    ax.set_axis_off()
fig.tight_layout()
out = output_dir() / "01_hsv_channels.png"
fig.savefig(out, dpi=110)
print("wrote", out)

# The rust patches carry almost all of the saturation mass.
print(f"mean saturation on rust: {saturation[truth].mean():.3f}")
print(f"mean saturation on paint: {saturation[~truth].mean():.3f}")
