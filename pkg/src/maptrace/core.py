"""Shared domain types, path validation, and pipeline configuration.

Coordinate convention everywhere: x = column, y = row, origin at the
top-left of the image. All core types are immutable after construction
and safe to share across workers.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels

MAP_CATEGORIES = (
    "zoo",
    "urban",
    "botanical garden",
    "museum",
    "amusement park",
    "national park",
    "hospital",
    "hotel",
    "airport",
    "shopping mall",
    "restaurant",
    "campus",
)

ASPECT_RATIOS = ("1:1", "3:4", "4:3", "16:9", "9:16")


class MapTraceError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(MapTraceError):
    """Two grid-shaped inputs do not share dimensions."""


class EmptyGraphError(MapTraceError):
    """A mask with no traversable pixels cannot produce a graph."""


class NoPathError(MapTraceError):
    """Both node ids are valid but no route connects them."""


class InvalidNodeError(MapTraceError):
    """A node id is outside the graph."""


class SamplingError(MapTraceError):
    """Endpoint sampling exhausted its attempt budget."""


class CriticProtocolError(MapTraceError):
    """A remote critic response carried no recognizable verdict."""


class DatasetFormatError(MapTraceError):
    """A dataset file violates the record schema or an invariant."""


def _frozen_array(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr)
    if out is arr:
        out = arr.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class RasterMap:
    """An RGB map image with its category label.

    ``pixels`` is a read-only (H, W, 3) uint8 array, row-major.
    """

    width: int
    height: int
    pixels: np.ndarray
    category: str
    map_id: str

    def __post_init__(self):
        if self.width < 16 or self.height < 16:
            raise ValueError(f"map must be at least 16x16, got {self.width}x{self.height}")
        if self.category not in MAP_CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.height, self.width, 3):
            raise ValueError(
                f"pixel array shape {px.shape} does not match {self.height}x{self.width}x3"
            )
        object.__setattr__(self, "pixels", _frozen_array(px))


@dataclass(frozen=True, eq=False)
class TraversabilityMask:
    """Binary per-pixel traversability grid; 1 = traversable.

    ``bits`` is a read-only (H, W) uint8 array.
    """

    width: int
    height: int
    bits: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bits)
        if b.shape != (self.height, self.width):
            raise ValueError(f"bit grid shape {b.shape} does not match {self.height}x{self.width}")
        object.__setattr__(self, "bits", _frozen_array((b != 0).astype(np.uint8)))

    @property
    def traversable_count(self) -> int:
        return int(self.bits.sum())

    def dilated(self, radius: int) -> "TraversabilityMask":
        """Mask grown by ``radius`` pixels with a square structuring element."""
        grown = kernels.box_dilate(self.bits, int(radius))
        return TraversabilityMask(self.width, self.height, grown)


@dataclass(frozen=True, order=True)
class Coordinate:
    """Pixel coordinate; x = column, y = row. May be fractional (block centers)."""

    x: float
    y: float

    def distance_to(self, other: "Coordinate") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class PathQuery:
    start: Coordinate
    end: Coordinate

    def __post_init__(self):
        if self.start == self.end:
            raise ValueError("start and end must differ")


@dataclass(frozen=True)
class PathAnnotation:
    """An ordered coordinate sequence answering a start/end query on one map."""

    query: PathQuery
    points: tuple[Coordinate, ...]
    map_id: str

    def __post_init__(self):
        pts = tuple(self.points)
        if len(pts) < 2:
            raise ValueError("a path needs at least 2 points")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class PipelineConfig:
    """Knobs shared across the pipeline stages.

    ``block_size``, ``max_distance`` and ``density_penalty`` drive graph
    construction; ``rgb_tolerance`` drives mask binarization;
    ``min_endpoint_distance`` constrains endpoint sampling.
    """

    k_clusters: int = 8
    rgb_tolerance: float = 25.0
    block_size: int = 4
    max_distance: float = 4.0
    density_penalty: float = 50.0
    min_endpoint_distance: float = 200.0
    rdp_epsilon: float = 2.0
    random_seed: int = 0

    def __post_init__(self):
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.max_distance <= 0:
            raise ValueError("max_distance must be > 0")
        if self.density_penalty < 0:
            raise ValueError("density_penalty must be >= 0")
        if self.min_endpoint_distance < 0:
            raise ValueError("min_endpoint_distance must be >= 0")
        if self.rdp_epsilon < 0:
            raise ValueError("rdp_epsilon must be >= 0")

    def replace(self, **changes) -> "PipelineConfig":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_CONFIG_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(PipelineConfig)}
_INT_FIELDS = {"k_clusters", "block_size", "random_seed"}


def default_config() -> PipelineConfig:
    """The stock configuration: b=4, max distance 4, density penalty 50,
    minimum endpoint separation 200 px, RGB tolerance 25, k=8,
    RDP epsilon 2.0."""
    return PipelineConfig()


def load_config_file(path: str | Path) -> dict:
    """Parse a plain-text key=value config file into override kwargs.

    Blank lines and ``#`` comments are ignored. Unknown keys raise.
    """
    overrides: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_FIELD_TYPES:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        overrides[key] = int(value) if key in _INT_FIELDS else float(value)
    return overrides


def make_config(file_path: Optional[str | Path] = None, **flag_overrides) -> PipelineConfig:
    """Layer config sources: defaults < config file < explicit flags."""
    values: dict = {}
    if file_path is not None:
        values.update(load_config_file(file_path))
    values.update({k: v for k, v in flag_overrides.items() if v is not None})
    return PipelineConfig(**values)


@dataclass(frozen=True)
class PathViolation:
    """First offending pixel found while validating a path."""

    pixel: tuple[int, int]
    point_index: Optional[int] = None
    segment_index: Optional[int] = None


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    violation: Optional[PathViolation] = None

    def __bool__(self) -> bool:
        return self.valid


def _to_pixel(c: Coordinate) -> tuple[int, int]:
    # round-half-up keeps .5 block centers deterministic
    return (int(math.floor(c.x + 0.5)), int(math.floor(c.y + 0.5)))


def rasterize_segment(a: Coordinate, b: Coordinate) -> np.ndarray:
    """Integer cells covered by the straight segment from a to b.

    Endpoints are rounded to their containing pixel; the walk includes
    every cell the segment touches (supercover), so the covered set is
    identical for (a, b) and (b, a).
    """
    ax, ay = _to_pixel(a)
    bx, by = _to_pixel(b)
    return kernels.supercover_cells(ax, ay, bx, by)


def rasterize_path(points: Sequence[Coordinate]) -> np.ndarray:
    """Union of all segment supercovers along a polyline, in walk order."""
    parts = [rasterize_segment(points[i], points[i + 1]) for i in range(len(points) - 1)]
    if not parts:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(parts, axis=0)


def validate_path(path: PathAnnotation, mask: TraversabilityMask) -> ValidationResult:
    """Check that a path stays on traversable pixels.

    Valid iff every path point and every pixel on the rasterized
    straight segment between consecutive points is traversable. On
    failure reports the first offending pixel together with the point
    or segment index where it was found. Points must be in bounds.
    """
    bits = mask.bits
    w, h = mask.width, mask.height
    pixels = [_to_pixel(p) for p in path.points]
    for idx, (px, py) in enumerate(pixels):
        if not (0 <= px < w and 0 <= py < h):
            raise ValueError(f"path point {idx} at ({px}, {py}) is out of bounds for {w}x{h}")
        if not bits[py, px]:
            return ValidationResult(False, PathViolation(pixel=(px, py), point_index=idx))
    for seg in range(len(path.points) - 1):
        cells = rasterize_segment(path.points[seg], path.points[seg + 1])
        for cx, cy in cells:
            if not bits[cy, cx]:
                return ValidationResult(
                    False, PathViolation(pixel=(int(cx), int(cy)), segment_index=seg)
                )
    return ValidationResult(True)


def require_same_dims(a, b) -> None:
    """Raise DimensionMismatchError unless both carry equal width/height."""
    if a.width != b.width or a.height != b.height:
        raise DimensionMismatchError(
            f"{a.width}x{a.height} vs {b.width}x{b.height}"
        )
