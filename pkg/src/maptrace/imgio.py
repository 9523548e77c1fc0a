"""PNG loading/saving and overlay rendering helpers."""

from __future__ import annotations

import base64
import io
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image

from .core import Coordinate, RasterMap, TraversabilityMask, rasterize_segment

MAGENTA = (255, 0, 255)


def load_map_png(path: str | Path, category: str = "urban", map_id: str | None = None) -> RasterMap:
    img = Image.open(path).convert("RGB")
    pixels = np.asarray(img, dtype=np.uint8)
    h, w = pixels.shape[:2]
    return RasterMap(
        width=w,
        height=h,
        pixels=pixels,
        category=category,
        map_id=map_id or Path(path).stem,
    )


def save_map_png(map_: RasterMap, path: str | Path) -> None:
    Image.fromarray(map_.pixels, mode="RGB").save(path, format="PNG")


def load_mask_png(path: str | Path) -> TraversabilityMask:
    img = Image.open(path).convert("L")
    arr = np.asarray(img, dtype=np.uint8)
    return TraversabilityMask(width=arr.shape[1], height=arr.shape[0], bits=arr >= 128)


def save_mask_png(mask: TraversabilityMask, path: str | Path) -> None:
    """White = traversable, black = blocked."""
    arr = (mask.bits * np.uint8(255)).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(path, format="PNG")


def render_path_overlay(
    map_: RasterMap, points: Sequence[Coordinate], thickness: int = 3
) -> np.ndarray:
    """Map image with a magenta polyline drawn over it.

    This is the visual handed to path critics; thickness only affects
    legibility, never validation (which rasterizes the thin segment).
    """
    canvas = map_.pixels.copy()
    half = max(0, thickness // 2)
    h, w = canvas.shape[:2]
    for i in range(len(points) - 1):
        for cx, cy in rasterize_segment(points[i], points[i + 1]):
            x0, x1 = max(0, cx - half), min(w, cx + half + 1)
            y0, y1 = max(0, cy - half), min(h, cy + half + 1)
            if x0 < x1 and y0 < y1:
                canvas[y0:y1, x0:x1] = MAGENTA
    return canvas


def png_bytes(array: np.ndarray) -> bytes:
    mode = "RGB" if array.ndim == 3 else "L"
    buf = io.BytesIO()
    Image.fromarray(array, mode=mode).save(buf, format="PNG")
    return buf.getvalue()


def png_base64(array: np.ndarray) -> str:
    return base64.b64encode(png_bytes(array)).decode("ascii")


def mask_render(mask: TraversabilityMask) -> np.ndarray:
    """Grayscale render of a mask (white = set), as handed to mask critics."""
    return (mask.bits * np.uint8(255)).astype(np.uint8)
