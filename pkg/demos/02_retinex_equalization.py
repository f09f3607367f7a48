"""
Single-scale Retinex against washed-out lighting
================================================

Glare lifts every channel toward white, which flattens saturation exactly
where the light hits. The log-ratio of the saturation plane to its wide
Gaussian surround cancels that slowly-varying veil, and a linear stretch
brings the result back into [0, 1].
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rustseg import SsrParams, extract_saturation, linear_stretch, rgb_image_to_hsv, ssr
from rustseg.synthetic import rust_board

from _output import output_dir

image, truth = rust_board(seed=21, n_patches=4, min_rust_px=4000)
size = image.shape[0]

# Additive glare ramping left to right: x' = x + a*(1 - x).
glare = np.linspace(0.0, 0.55, size)[None, :, None]
washed = image + glare * (1.0 - image)

saturation = extract_saturation(rgb_image_to_hsv(washed))
reflectance = linear_stretch(ssr(saturation, SsrParams()))

fig, axes = plt.subplots(1, 3, figsize=(12.5, 4.2))
axes[0].imshow(washed)
axes[0].set_title("board under a glare ramp")
axes[1].imshow(saturation, cmap="gray", vmin=0, vmax=1)
axes[1].set_title("saturation (veiled on the right)")
axes[2].imshow(reflectance, cmap="gray", vmin=0, vmax=1)
axes[2].set_title("stretched reflectance")
for ax in axes:
    ax.set_axis_off()
fig.tight_layout()
out = output_dir() / "02_retinex.png"
fig.savefig(out, dpi=110)
print("wrote", out)

# Patch-over-background contrast before and after, measured on the glare side.
right = np.zeros_like(truth)
right[:, size // 2 :] = True
for name, plane in [("saturation", saturation), ("reflectance", reflectance)]:
    rust = plane[truth & right].mean()
    paint = plane[~truth & right].mean()
    print(f"{name:12s} rust {rust:.3f} vs paint {paint:.3f}  (gap {rust - paint:+.3f})")
