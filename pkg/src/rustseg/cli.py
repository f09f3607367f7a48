"""Command line front end: batch analysis and the calibration service."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .colorfilter import FilterConfig
from .pipeline import (
    BatchError,
    ConfigError,
    EmitFlags,
    PipelineConfig,
    default_config,
    load_config,
    parse_fusion,
    run_batch,
)

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}

EXIT_OK = 0
EXIT_BATCH = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rustseg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="report rust percentage per image")
    an.add_argument("paths", nargs="+", help="image files or directories of images")
    an.add_argument("--config", help="pipeline config JSON file")
    an.add_argument("--out-dir", help="directory for mask/overlay/report artifacts")
    an.add_argument("--sigma", type=float, help="Retinex surround sigma in pixels")
    an.add_argument("--eps", type=float, help="DBSCAN neighborhood radius in pixels")
    an.add_argument("--min-pts", type=int, help="DBSCAN core-point neighbor count")
    an.add_argument("--min-area", type=int, help="smallest cluster kept, in pixels")
    an.add_argument("--rust-threshold-pct", type=float, help="RUSTY verdict cutoff")
    an.add_argument("--fusion", choices=["color", "and", "or"], help="mask fusion mode")
    an.add_argument("--emit", help="comma list from mask,overlay,report (default all)")
    an.add_argument("--workers", type=int, default=1, help="parallel images (default 1)")

    cal = sub.add_parser("calibrate", help="serve the interactive calibration tool")
    cal.add_argument("image_dir", help="directory of images to calibrate against")
    cal.add_argument("--listen", default="127.0.0.1:8080", help="bind address host:port")
    cal.add_argument("--ui-dir", help="directory of built UI assets to serve at /")
    return parser


def _resolve_config(args) -> PipelineConfig:
    config = load_config(args.config) if args.config else default_config()
    if args.sigma is not None:
        config = replace(config, ssr=replace(config.ssr, sigma=args.sigma))
    if args.eps is not None:
        config = replace(config, db=replace(config.db, eps=args.eps))
    if args.min_pts is not None:
        config = replace(config, db=replace(config.db, min_pts=args.min_pts))
    if args.min_area is not None:
        config = replace(config, min_area=args.min_area)
    if args.rust_threshold_pct is not None:
        config = replace(config, rust_threshold_pct=args.rust_threshold_pct)
    if args.fusion is not None:
        fusion = parse_fusion(args.fusion)
        config = replace(config, filter=FilterConfig(ranges=config.filter.ranges, fusion=fusion))
    if args.emit is not None:
        config = replace(config, emit=EmitFlags.parse(args.emit))
    return config


def expand_paths(raw_paths) -> list[Path]:
    paths: list[Path] = []
    for raw in raw_paths:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(q for q in p.iterdir() if q.suffix.lower() in IMAGE_SUFFIXES))
        else:
            paths.append(p)
    return paths


def cmd_analyze(args) -> int:
    try:
        config = _resolve_config(args)
    except (ConfigError, ValueError) as exc:
        print(f"rustseg: bad config: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    paths = expand_paths(args.paths)
    try:
        result = run_batch(paths, config, out_dir=args.out_dir, workers=args.workers)
    except BatchError as exc:
        print(f"rustseg: batch error: {exc}", file=sys.stderr)
        return EXIT_BATCH

    for report in result.reports:
        print(f"{report.image_id}: {report.rust_percentage:.4f}% {report.classification}")
    for failure in result.failures:
        print(f"rustseg: failed {failure.path}: {failure.error}", file=sys.stderr)
    summary = result.summary()
    print(
        f"{summary['analyzed']} analyzed, {summary['rusty']} rusty, "
        f"{summary['clean']} clean, {summary['failed']} failed"
    )
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    import uvicorn

    from .service import build_app

    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        print(f"rustseg: bad --listen address: {args.listen}", file=sys.stderr)
        return EXIT_CONFIG
    image_dir = Path(args.image_dir)
    if not image_dir.is_dir():
        print(f"rustseg: not a directory: {image_dir}", file=sys.stderr)
        return EXIT_BATCH
    app = build_app(image_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_calibrate(args)


if __name__ == "__main__":
    sys.exit(main())
