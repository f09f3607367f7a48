"""
The full pipeline on a batch of station objects
===============================================

Seven synthetic boards mirror a small inspection round: four rusty, three
clean. Each image runs through HSV conversion, Retinex on saturation,
thresholding, color filtering, fusion, and DBSCAN, ending in a rust
percentage and a RUSTY/CLEAN verdict.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rustseg import analyze, default_config, render_overlay, report_json
from rustseg.synthetic import iou, station_set

from _output import output_dir

config = default_config()
objects = station_set(seed=7)

fig, axes = plt.subplots(2, 7, figsize=(22, 6.6))
for col, obj in enumerate(objects):
    result = analyze(obj.image, config, image_id=obj.name)
    report = result.report
    score = iou(result.rust_mask, obj.truth)
    print(
        f"{obj.name}: {report.rust_percentage:6.3f}% {report.classification:5s} "
        f"({len(report.clusters)} clusters, IoU {score:.3f})"
    )
    axes[0, col].imshow(obj.image)
    axes[0, col].set_title(obj.name.split("_", 1)[1], fontsize=9)
    axes[1, col].imshow(render_overlay(obj.image, result.cluster_set))
    axes[1, col].set_title(f"{report.rust_percentage:.2f}% {report.classification}", fontsize=9)
    axes[0, col].set_axis_off()
    axes[1, col].set_axis_off()
fig.tight_layout()
out = output_dir() / "06_pipeline_overlays.png"
fig.savefig(out, dpi=100)
print("wrote", out)

# The same report the CLI writes per image:
sample = analyze(objects[0].image, config, image_id=objects[0].name).report
(output_dir() / "06_sample_report.json").write_text(report_json(sample))
print("wrote", output_dir() / "06_sample_report.json")
