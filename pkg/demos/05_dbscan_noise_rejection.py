"""
DBSCAN noise rejection on a candidate mask
==========================================

Color filtering alone lets isolated look-alike pixels through. Density
clustering keeps only contiguous regions: scattered candidates never reach
the core-point neighbor count and fall out as noise, and small clusters are
dropped by the area floor.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from rustseg import DbscanParams, cluster_mask, dbscan, filter_clusters, mask_to_points

from _output import output_dir

rng = np.random.default_rng(3)

# A candidate mask: two genuine blobs plus salt noise.
mask = np.zeros((160, 240), dtype=bool)
mask[30:70, 40:100] = True
yy, xx = np.mgrid[0:160, 0:240]
mask |= (xx - 180) ** 2 + (yy - 110) ** 2 <= 28**2
salt = rng.random(mask.shape) < 0.004
mask |= salt

points = mask_to_points(mask)
params = DbscanParams(eps=3.0, min_pts=9)
clusters = dbscan(points, params)
kept = filter_clusters(clusters, min_area=64)
cleaned = cluster_mask(kept, mask.shape[1], mask.shape[0])

noise_count = int((clusters.labels == -1).sum())
print(f"{len(points)} candidates -> {len(clusters.clusters)} raw clusters, {noise_count} noise points")
for c in kept.clusters:
    print(f"  kept cluster {c.id}: {c.pixel_count} px, bbox {c.bbox}, centroid {c.centroid}")

fig, axes = plt.subplots(1, 3, figsize=(13, 3.6))
axes[0].imshow(mask, cmap="gray")
axes[0].set_title("candidate mask with salt noise")
axes[1].scatter(points[:, 0], points[:, 1], c=clusters.labels, s=2, cmap="tab10")
axes[1].invert_yaxis()
axes[1].set_title("cluster labels (noise = -1)")
axes[1].set_aspect("equal")
axes[2].imshow(cleaned, cmap="gray")
axes[2].set_title("after density + area filtering")
for ax in (axes[0], axes[2]):
    ax.set_axis_off()
fig.tight_layout()
out = output_dir() / "05_dbscan.png"
fig.savefig(out, dpi=110)
print("wrote", out)
