"""Candidate traversability masks via dominant-color clustering.

k-means over raw RGB pixels finds the map's dominant colors; each
centroid is turned into a candidate mask by a per-channel tolerance
test, and critic-accepted candidates are OR-merged into the final
traversable mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .core import RasterMap, TraversabilityMask, require_same_dims

CLUSTER_SAMPLE_CAP = 1_000_000


@dataclass(frozen=True)
class ColorCluster:
    """A dominant color: real-valued RGB centroid plus its pixel count."""

    centroid: tuple[float, float, float]
    member_count: int
    index: int

    def __post_init__(self):
        if not all(0.0 <= c <= 255.0 for c in self.centroid):
            raise ValueError(f"centroid out of RGB range: {self.centroid}")
        if self.member_count < 0:
            raise ValueError("member_count must be >= 0")


@dataclass(frozen=True, eq=False)
class CandidateMask:
    cluster: ColorCluster
    mask: TraversabilityMask
    coverage_fraction: float

    def __post_init__(self):
        expected = self.mask.traversable_count / (self.mask.width * self.mask.height)
        if abs(self.coverage_fraction - expected) > 1e-12:
            raise ValueError("coverage_fraction inconsistent with the bit grid")


def _farthest_point_seeds(pixels: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Deterministic farthest-point seeding from a seeded start pixel.

    Stops early when every remaining pixel coincides with a chosen seed,
    which caps the cluster count at the number of distinct colors.
    """
    n = pixels.shape[0]
    seeds = [pixels[int(rng.integers(n))]]
    min_sq = np.full(n, np.inf)
    for _ in range(1, k):
        diff = pixels - seeds[-1]
        np.minimum(min_sq, np.einsum("ij,ij->i", diff, diff), out=min_sq)
        far = int(np.argmax(min_sq))
        if min_sq[far] <= 0.0:
            break
        seeds.append(pixels[far])
    return np.array(seeds, dtype=np.float64)


def kmeans_colors(
    map_: RasterMap, k: int, seed: int, max_iters: int = 25
) -> list[ColorCluster]:
    """Cluster the map's pixels into up to ``k`` dominant colors.

    Deterministic for a fixed seed. Lloyd iterations run until the
    assignment reaches a fixpoint or ``max_iters``; an emptied cluster
    is re-seeded from the pixel farthest from its centroid. Images over
    1M pixels are uniformly subsampled for the iterations, but member
    counts and final centroids come from a full assignment pass.
    Returns fewer than ``k`` clusters when the image has fewer distinct
    colors than ``k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    all_pixels = map_.pixels.reshape(-1, 3).astype(np.float64)
    n = all_pixels.shape[0]
    if n == 0:
        raise ValueError("empty image")

    rng = np.random.default_rng(seed)
    if n > CLUSTER_SAMPLE_CAP:
        idx = rng.choice(n, size=CLUSTER_SAMPLE_CAP, replace=False)
        idx.sort()
        train = all_pixels[idx]
    else:
        train = all_pixels

    centroids = _farthest_point_seeds(train, k, rng)
    k_eff = centroids.shape[0]

    labels = None
    for _ in range(max_iters):
        new_labels, sqdists = kernels.assign_labels(train, centroids)
        if labels is not None and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
        counts = np.bincount(labels, minlength=k_eff)
        sums = np.zeros((k_eff, 3), dtype=np.float64)
        for ch in range(3):
            sums[:, ch] = np.bincount(labels, weights=train[:, ch], minlength=k_eff)
        empty = np.flatnonzero(counts == 0)
        nonempty = counts > 0
        centroids[nonempty] = sums[nonempty] / counts[nonempty, np.newaxis]
        for j in empty:
            far = int(np.argmax(sqdists))
            centroids[j] = train[far]
            sqdists[far] = 0.0

    # final full-image assignment; centroids become exact means of it
    full_labels, _ = kernels.assign_labels(all_pixels, centroids)
    counts = np.bincount(full_labels, minlength=k_eff)
    sums = np.zeros((k_eff, 3), dtype=np.float64)
    for ch in range(3):
        sums[:, ch] = np.bincount(full_labels, weights=all_pixels[:, ch], minlength=k_eff)

    clusters: list[ColorCluster] = []
    for j in range(k_eff):
        if counts[j] == 0:
            continue
        mean = sums[j] / counts[j]
        clusters.append(
            ColorCluster(
                centroid=(float(mean[0]), float(mean[1]), float(mean[2])),
                member_count=int(counts[j]),
                index=len(clusters),
            )
        )
    return clusters


def kmeans_objective(map_: RasterMap, clusters: Sequence[ColorCluster]) -> float:
    """Sum of squared pixel-to-assigned-centroid distances (the clustering objective)."""
    pixels = map_.pixels.reshape(-1, 3).astype(np.float64)
    centroids = np.array([c.centroid for c in clusters], dtype=np.float64)
    _, sqdists = kernels.assign_labels(pixels, centroids)
    return float(sqdists.sum())


def binarize_cluster(
    map_: RasterMap, cluster: ColorCluster, tolerance: float
) -> CandidateMask:
    """Mask of pixels within ``tolerance`` of the centroid on every channel.

    Intentionally independent of the cluster assignment: anti-aliased
    pixels assigned elsewhere still count when close enough in color.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    centroid = np.array(cluster.centroid, dtype=np.float64)
    bits = kernels.binarize_linf(map_.pixels, centroid, float(tolerance))
    mask = TraversabilityMask(map_.width, map_.height, bits)
    coverage = mask.traversable_count / (map_.width * map_.height)
    return CandidateMask(cluster=cluster, mask=mask, coverage_fraction=coverage)


def merge_masks(
    accepted: Sequence[CandidateMask],
    width: Optional[int] = None,
    height: Optional[int] = None,
) -> TraversabilityMask:
    """Pixelwise OR of the accepted candidates.

    With an empty input the target dimensions must be given explicitly
    and an all-zero mask of that size is returned.
    """
    if not accepted:
        if width is None or height is None:
            raise ValueError("empty merge needs explicit width and height")
        return TraversabilityMask(width, height, np.zeros((height, width), dtype=np.uint8))
    first = accepted[0].mask
    merged = first.bits.copy()
    for cand in accepted[1:]:
        require_same_dims(first, cand.mask)
        merged |= cand.mask.bits
    return TraversabilityMask(first.width, first.height, merged)
