"""End-to-end rust analysis: stage orchestration, config and report plumbing."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .colorfilter import FilterConfig, Fusion, HsvRange, apply_ranges, default_ranges, fuse_masks
from .colorspace import extract_saturation, rgb_image_to_hsv
from .dbscan import ClusterSet, ClusterStats, DbscanParams, cluster_mask, cluster_pixels
from .imaging import load_rgb, mask_png_bytes, render_overlay, require_rgb, rgb_png_bytes
from .retinex import SsrParams, linear_stretch, ssr
from .threshold import iterated_threshold

RUSTY = "RUSTY"
CLEAN = "CLEAN"


class ConfigError(ValueError):
    """Invalid pipeline configuration; carries the offending field path."""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field = field_path
        self.message = message


class BatchError(RuntimeError):
    """The batch as a whole could not produce any report."""


@dataclass(frozen=True)
class EmitFlags:
    mask: bool = True
    overlay: bool = True
    report: bool = True

    @classmethod
    def parse(cls, spec: str) -> "EmitFlags":
        wanted = {part.strip() for part in spec.split(",") if part.strip()}
        unknown = wanted - {"mask", "overlay", "report"}
        if unknown:
            raise ConfigError("emit", f"unknown artifact names: {sorted(unknown)}")
        return cls(mask="mask" in wanted, overlay="overlay" in wanted, report="report" in wanted)


@dataclass(frozen=True)
class PipelineConfig:
    ssr: SsrParams = field(default_factory=SsrParams)
    filter: FilterConfig = field(default_factory=lambda: FilterConfig(ranges=default_ranges()))
    db: DbscanParams = field(default_factory=DbscanParams)
    min_area: int = 64
    rust_threshold_pct: float = 0.5
    emit: EmitFlags = field(default_factory=EmitFlags)

    def __post_init__(self):
        if self.min_area < 0:
            raise ConfigError("min_area", f"must be >= 0, got {self.min_area}")
        if not 0.0 <= self.rust_threshold_pct <= 100.0:
            raise ConfigError("rust_threshold_pct", f"must be in [0, 100], got {self.rust_threshold_pct}")


def default_config() -> PipelineConfig:
    return PipelineConfig()


@dataclass(frozen=True)
class RustReport:
    image_id: str
    width: int
    height: int
    rust_pixel_count: int
    total_pixels: int
    rust_percentage: float
    clusters: tuple[ClusterStats, ...]
    classification: str
    config: dict


@dataclass(frozen=True)
class AnalysisResult:
    report: RustReport
    candidate: np.ndarray     # fused mask before density filtering
    cluster_set: ClusterSet
    rust_mask: np.ndarray     # retained cluster pixels


def classify(rust_percentage: float, rust_threshold_pct: float) -> str:
    return RUSTY if rust_percentage >= rust_threshold_pct else CLEAN


def stretched_response(saturation: np.ndarray, params: SsrParams) -> np.ndarray:
    """Illumination-equalized saturation plane, stretched into [0,1]."""
    return linear_stretch(ssr(saturation, params))


def candidate_mask(
    image: np.ndarray,
    config: PipelineConfig,
    *,
    hsv: np.ndarray | None = None,
    stretched: np.ndarray | None = None,
) -> np.ndarray:
    """Fused rust-candidate mask, before density filtering.

    This is the single code path behind both the batch pipeline and the
    calibration previews; hsv/stretched accept precomputed planes so callers
    may cache them. COLOR_ONLY skips the threshold branch entirely.
    """
    if hsv is None:
        require_rgb(image)
        hsv = rgb_image_to_hsv(image)
    color = apply_ranges(hsv, config.filter)
    if config.filter.fusion is Fusion.COLOR_ONLY:
        return color
    if stretched is None:
        stretched = stretched_response(extract_saturation(hsv), config.ssr)
    return fuse_masks(color, iterated_threshold(stretched), config.filter.fusion)


def analyze(
    image: np.ndarray,
    config: PipelineConfig,
    image_id: str = "image",
    *,
    hsv: np.ndarray | None = None,
    stretched: np.ndarray | None = None,
) -> AnalysisResult:
    """Run every stage over one image and assemble the report."""
    if hsv is None:
        require_rgb(image)
    height, width = image.shape[:2] if hsv is None else hsv.shape[:2]
    candidate = candidate_mask(image, config, hsv=hsv, stretched=stretched)
    clusters = cluster_pixels(candidate, config.db, config.min_area)
    rust_mask = cluster_mask(clusters, width, height)
    rust_pixels = int(rust_mask.sum())
    total = width * height
    pct = 100.0 * rust_pixels / total
    report = RustReport(
        image_id=image_id,
        width=width,
        height=height,
        rust_pixel_count=rust_pixels,
        total_pixels=total,
        rust_percentage=pct,
        clusters=clusters.clusters,
        classification=classify(pct, config.rust_threshold_pct),
        config=config_to_dict(config),
    )
    return AnalysisResult(report=report, candidate=candidate, cluster_set=clusters, rust_mask=rust_mask)


# ---------------------------------------------------------------------------
# config JSON

def config_to_dict(config: PipelineConfig) -> dict:
    return {
        "ssr": {"sigma": config.ssr.sigma, "epsilon_floor": config.ssr.epsilon_floor},
        "ranges": [
            {
                "h_lo": r.h_lo,
                "h_hi": r.h_hi,
                "s_lo": r.s_lo,
                "s_hi": r.s_hi,
                "v_lo": r.v_lo,
                "v_hi": r.v_hi,
            }
            for r in config.filter.ranges
        ],
        "fusion": config.filter.fusion.value,
        "dbscan": {"eps": config.db.eps, "min_pts": config.db.min_pts},
        "min_area": config.min_area,
        "rust_threshold_pct": config.rust_threshold_pct,
    }


def config_json(config: PipelineConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2) + "\n"


def _expect_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(path, f"expected an object, got {type(value).__name__}")
    return value


def _number(value, path: str, allow_none: bool = False) -> float | None:
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return value


def parse_ssr(raw, path: str = "ssr") -> SsrParams:
    raw = _expect_mapping(raw, path)
    unknown = set(raw) - {"sigma", "epsilon_floor"}
    if unknown:
        raise ConfigError(path, f"unknown keys: {sorted(unknown)}")
    defaults = SsrParams()
    try:
        return SsrParams(
            sigma=_number(raw.get("sigma", defaults.sigma), f"{path}.sigma", allow_none=True),
            epsilon_floor=_number(raw.get("epsilon_floor", defaults.epsilon_floor), f"{path}.epsilon_floor"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def parse_ranges(raw, path: str = "ranges") -> tuple[HsvRange, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError(path, "expected a nonempty list of HSV ranges")
    ranges = []
    for i, item in enumerate(raw):
        entry_path = f"{path}[{i}]"
        item = _expect_mapping(item, entry_path)
        keys = {"h_lo", "h_hi", "s_lo", "s_hi", "v_lo", "v_hi"}
        unknown = set(item) - keys
        if unknown:
            raise ConfigError(entry_path, f"unknown keys: {sorted(unknown)}")
        missing = keys - set(item)
        if missing:
            raise ConfigError(entry_path, f"missing keys: {sorted(missing)}")
        values = {k: _number(item[k], f"{entry_path}.{k}") for k in keys}
        try:
            ranges.append(HsvRange(**values))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(entry_path, str(exc)) from exc
    return tuple(ranges)


def parse_fusion(raw, path: str = "fusion") -> Fusion:
    try:
        return Fusion(raw)
    except ValueError:
        choices = [f.value for f in Fusion]
        raise ConfigError(path, f"expected one of {choices}, got {raw!r}") from None


def parse_dbscan(raw, path: str = "dbscan") -> DbscanParams:
    raw = _expect_mapping(raw, path)
    unknown = set(raw) - {"eps", "min_pts"}
    if unknown:
        raise ConfigError(path, f"unknown keys: {sorted(unknown)}")
    defaults = DbscanParams()
    try:
        return DbscanParams(
            eps=_number(raw.get("eps", defaults.eps), f"{path}.eps"),
            min_pts=_integer(raw.get("min_pts", defaults.min_pts), f"{path}.min_pts"),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def config_from_dict(raw: dict, emit: EmitFlags | None = None) -> PipelineConfig:
    raw = _expect_mapping(raw, "config")
    known = {"ssr", "ranges", "fusion", "dbscan", "min_area", "rust_threshold_pct"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError("config", f"unknown keys: {sorted(unknown)}")
    defaults = default_config()
    ssr_params = parse_ssr(raw["ssr"]) if "ssr" in raw else defaults.ssr
    ranges = parse_ranges(raw["ranges"]) if "ranges" in raw else defaults.filter.ranges
    fusion = parse_fusion(raw["fusion"]) if "fusion" in raw else defaults.filter.fusion
    db_params = parse_dbscan(raw["dbscan"]) if "dbscan" in raw else defaults.db
    min_area = _integer(raw.get("min_area", defaults.min_area), "min_area")
    pct = _number(raw.get("rust_threshold_pct", defaults.rust_threshold_pct), "rust_threshold_pct")
    return PipelineConfig(
        ssr=ssr_params,
        filter=FilterConfig(ranges=ranges, fusion=fusion),
        db=db_params,
        min_area=min_area,
        rust_threshold_pct=pct,
        emit=emit or defaults.emit,
    )


def load_config(path) -> PipelineConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(raw)


def save_config(config: PipelineConfig, path) -> None:
    Path(path).write_text(config_json(config))


# ---------------------------------------------------------------------------
# reports and batch runs

def report_to_dict(report: RustReport) -> dict:
    return {
        "image_id": report.image_id,
        "width": report.width,
        "height": report.height,
        "rust_pixel_count": report.rust_pixel_count,
        "total_pixels": report.total_pixels,
        "rust_percentage": report.rust_percentage,
        "clusters": [
            {
                "id": c.id,
                "pixel_count": c.pixel_count,
                "bbox": list(c.bbox),
                "centroid": list(c.centroid),
            }
            for c in report.clusters
        ],
        "classification": report.classification,
        "config": report.config,
    }


def report_json(report: RustReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


@dataclass(frozen=True)
class BatchFailure:
    path: str
    error: str


@dataclass(frozen=True)
class BatchResult:
    reports: list[RustReport]
    failures: list[BatchFailure]

    def summary(self) -> dict:
        rusty = sum(1 for r in self.reports if r.classification == RUSTY)
        return {
            "images": len(self.reports) + len(self.failures),
            "analyzed": len(self.reports),
            "rusty": rusty,
            "clean": len(self.reports) - rusty,
            "failed": len(self.failures),
            "failures": [{"path": f.path, "error": f.error} for f in self.failures],
        }


def analyze_file(path, config: PipelineConfig, out_dir=None) -> RustReport:
    """Analyze one file, writing artifacts per the emit flags when out_dir is set.

    The mask artifact is the fused candidate mask (pre density filtering);
    the final clusters are what the overlay and the report carry.
    """
    path = Path(path)
    image = load_rgb(path)
    result = analyze(image, config, image_id=path.stem)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if config.emit.mask:
            (out_dir / f"{path.stem}.mask.png").write_bytes(mask_png_bytes(result.candidate))
        if config.emit.overlay:
            overlay = render_overlay(image, result.cluster_set)
            (out_dir / f"{path.stem}.overlay.png").write_bytes(rgb_png_bytes(overlay))
        if config.emit.report:
            (out_dir / f"{path.stem}.report.json").write_text(report_json(result.report))
    return result.report


def run_batch(paths, config: PipelineConfig, out_dir=None, workers: int = 1) -> BatchResult:
    """Analyze many files; per-image failures are recorded, not fatal."""
    paths = [Path(p) for p in paths]
    if not paths:
        raise BatchError("no input images")

    def task(path: Path):
        try:
            return path, analyze_file(path, config, out_dir), None
        except Exception as exc:
            return path, None, f"{type(exc).__name__}: {exc}"

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(task, paths))
    else:
        outcomes = [task(p) for p in paths]

    reports = [report for _, report, err in outcomes if err is None]
    failures = [BatchFailure(path=str(p), error=err) for p, _, err in outcomes if err is not None]
    if not reports:
        raise BatchError(f"no image could be analyzed ({len(failures)} failures)")
    return BatchResult(reports=reports, failures=failures)
