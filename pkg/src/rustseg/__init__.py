"""Rust segmentation for painted metal structures.

Pipeline: RGB -> HSV, single-scale Retinex on the saturation plane, linear
stretch, between-class-variance thresholding with one refinement pass,
calibrated HSV range filtering, mask fusion, and DBSCAN noise rejection,
ending in a rust percentage and a rusty/clean verdict.
"""

from .colorfilter import FilterConfig, Fusion, HsvRange, apply_ranges, default_ranges, fuse_masks, in_range
from .colorspace import (
    HsvPixel,
    extract_saturation,
    hsv_planes_to_rgb,
    hsv_to_rgb,
    rgb_image_to_hsv,
    rgb_planes_to_hsv,
    rgb_to_hsv,
)
from .dbscan import (
    NOISE,
    ClusterSet,
    ClusterStats,
    DbscanParams,
    build_grid,
    cluster_mask,
    cluster_pixels,
    dbscan,
    decimate_mask,
    filter_clusters,
    mask_to_points,
    region_query,
)
from .imaging import load_mask, load_rgb, mask_png_bytes, render_overlay, rgb_png_bytes, save_mask, save_rgb
from .pipeline import (
    AnalysisResult,
    BatchError,
    BatchResult,
    CLEAN,
    ConfigError,
    EmitFlags,
    PipelineConfig,
    RUSTY,
    RustReport,
    analyze,
    analyze_file,
    candidate_mask,
    classify,
    config_from_dict,
    config_json,
    config_to_dict,
    default_config,
    load_config,
    report_json,
    report_to_dict,
    run_batch,
    save_config,
    stretched_response,
)
from .retinex import GaussianKernel, SsrParams, convolve, gaussian_kernel, linear_stretch, ssr
from .threshold import (
    DegenerateHistogramError,
    ThresholdResult,
    build_histogram,
    iterated_threshold,
    otsu_threshold,
    quantize_unit,
)

__version__ = "0.1.0"
