"""Local HTTP service behind the interactive calibration UI.

Serves the image set, applies filter parameters on demand through the same
code path as the batch pipeline, and keeps one mutable session config.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from fastapi import Body, FastAPI, HTTPException
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .colorfilter import Fusion
from .colorspace import extract_saturation, rgb_image_to_hsv
from .imaging import load_rgb, mask_png_bytes, rgb_png_bytes
from .pipeline import (
    ConfigError,
    PipelineConfig,
    analyze,
    candidate_mask,
    config_from_dict,
    config_json,
    default_config,
    report_json,
    stretched_response,
)

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg"}
_CACHE_CAP = 64


@dataclass(frozen=True)
class StoredImage:
    id: str
    name: str
    width: int
    height: int
    image: np.ndarray
    hsv: np.ndarray
    png: bytes


class SessionState:
    """Read-only image store plus the mutable per-session config.

    Stretched-response planes are cached per (image, sigma, epsilon_floor);
    entries are immutable so concurrent recomputation is harmless.
    """

    def __init__(self, image_dir: Path):
        self.images: dict[str, StoredImage] = {}
        for path in sorted(Path(image_dir).iterdir()):
            if path.suffix.lower() not in IMAGE_SUFFIXES:
                continue
            raw = path.read_bytes()
            image = load_rgb(path)
            image_id = hashlib.sha256(path.name.encode() + b"\x00" + raw).hexdigest()[:12]
            self.images[image_id] = StoredImage(
                id=image_id,
                name=path.name,
                width=image.shape[1],
                height=image.shape[0],
                image=image,
                hsv=rgb_image_to_hsv(image),
                png=rgb_png_bytes(image),
            )
        self._config = default_config()
        self._config_lock = threading.Lock()
        self._stretched: dict[tuple, np.ndarray] = {}

    def entry(self, image_id: str) -> StoredImage:
        entry = self.images.get(image_id)
        if entry is None:
            raise HTTPException(status_code=404, detail={"error": f"unknown image id {image_id!r}"})
        return entry

    def listing(self) -> list[dict]:
        ordered = sorted(self.images.values(), key=lambda e: e.name)
        return [{"id": e.id, "name": e.name, "width": e.width, "height": e.height} for e in ordered]

    @property
    def config(self) -> PipelineConfig:
        with self._config_lock:
            return self._config

    @config.setter
    def config(self, value: PipelineConfig) -> None:
        with self._config_lock:
            self._config = value

    def stretched(self, entry: StoredImage, config: PipelineConfig) -> np.ndarray | None:
        if config.filter.fusion is Fusion.COLOR_ONLY:
            return None
        key = (entry.id, config.ssr.sigma, config.ssr.epsilon_floor)
        plane = self._stretched.get(key)
        if plane is None:
            plane = stretched_response(extract_saturation(entry.hsv), config.ssr)
            if len(self._stretched) >= _CACHE_CAP:
                self._stretched.clear()
            self._stretched[key] = plane
        return plane


def _parse_body_config(payload: dict) -> tuple[str, PipelineConfig]:
    if not isinstance(payload, dict):
        raise ConfigError("body", "expected a JSON object")
    payload = dict(payload)
    image_id = payload.pop("image_id", None)
    if not isinstance(image_id, str) or not image_id:
        raise ConfigError("image_id", "required string field")
    return image_id, config_from_dict(payload)


def build_app(image_dir, ui_dir=None) -> FastAPI:
    state = SessionState(Path(image_dir))
    app = FastAPI(title="rustseg calibration")
    app.state.session = state

    @app.exception_handler(ConfigError)
    async def _config_error(_request, exc: ConfigError):
        return JSONResponse(status_code=400, content={"error": exc.message, "field": exc.field})

    @app.get("/api/images")
    def list_images():
        return state.listing()

    @app.get("/api/images/{image_id}")
    def get_image(image_id: str):
        return Response(content=state.entry(image_id).png, media_type="image/png")

    @app.post("/api/mask")
    def preview_mask(payload: dict = Body(...)):
        image_id, config = _parse_body_config(payload)
        entry = state.entry(image_id)
        mask = candidate_mask(
            entry.image, config, hsv=entry.hsv, stretched=state.stretched(entry, config)
        )
        return Response(content=mask_png_bytes(mask), media_type="image/png")

    @app.post("/api/analyze")
    def analyze_now(payload: dict = Body(...)):
        image_id, config = _parse_body_config(payload)
        entry = state.entry(image_id)
        result = analyze(
            entry.image,
            config,
            image_id=Path(entry.name).stem,
            hsv=entry.hsv,
            stretched=state.stretched(entry, config),
        )
        return Response(content=report_json(result.report), media_type="application/json")

    @app.get("/api/config")
    def get_config():
        return Response(content=config_json(state.config), media_type="application/json")

    @app.put("/api/config")
    def put_config(payload: dict = Body(...)):
        state.config = config_from_dict(payload)
        return Response(content=config_json(state.config), media_type="application/json")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
