"""Pure-Python/numpy implementations of the hot kernels.

Used when the compiled extension is unavailable (or when forced via
MAPTRACE_KERNELS=python). Semantics must match ``_ckernels`` exactly;
the parity tests assert bit-identical results.
"""

from __future__ import annotations

import numpy as np


def accumulated_dtw_cost(a: np.ndarray, b: np.ndarray) -> float:
    """Minimal cumulative DTW cost between two 2-D point sequences.

    Full |a|x|b| dynamic program; steps (i-1,j), (i,j-1), (i-1,j-1),
    each cell's Euclidean cost added exactly once.
    """
    n, m = len(a), len(b)
    dx = a[:, 0:1] - b[np.newaxis, :, 0]
    dy = a[:, 1:2] - b[np.newaxis, :, 1]
    cost = np.sqrt(dx * dx + dy * dy)

    acc = np.empty((n, m), dtype=np.float64)
    acc[0, 0] = cost[0, 0]
    for j in range(1, m):
        acc[0, j] = acc[0, j - 1] + cost[0, j]
    for i in range(1, n):
        acc[i, 0] = acc[i - 1, 0] + cost[i, 0]
        for j in range(1, m):
            best = acc[i - 1, j - 1]
            if acc[i - 1, j] < best:
                best = acc[i - 1, j]
            if acc[i, j - 1] < best:
                best = acc[i, j - 1]
            acc[i, j] = cost[i, j] + best
    return float(acc[n - 1, m - 1])


def assign_labels(pixels: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-centroid assignment: returns (labels, squared distances).

    Ties go to the lower centroid index.
    """
    n = pixels.shape[0]
    k = centroids.shape[0]
    # chunked to bound the (chunk, k) temporary for megapixel inputs
    labels = np.empty(n, dtype=np.int32)
    sqdists = np.empty(n, dtype=np.float64)
    chunk = 1 << 16
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        block = pixels[start:stop]
        d = np.empty((stop - start, k), dtype=np.float64)
        for j in range(k):
            diff = block - centroids[j]
            d[:, j] = diff[:, 0] ** 2 + diff[:, 1] ** 2 + diff[:, 2] ** 2
        labels[start:stop] = np.argmin(d, axis=1).astype(np.int32)
        sqdists[start:stop] = d[np.arange(stop - start), labels[start:stop]]
    return labels, sqdists


def binarize_linf(image: np.ndarray, centroid: np.ndarray, tolerance: float) -> np.ndarray:
    """Per-pixel L-infinity test against an RGB centroid.

    A pixel is set iff every channel differs from the centroid's channel
    by at most ``tolerance``.
    """
    px = image.astype(np.float64)
    ok = np.abs(px[:, :, 0] - centroid[0]) <= tolerance
    ok &= np.abs(px[:, :, 1] - centroid[1]) <= tolerance
    ok &= np.abs(px[:, :, 2] - centroid[2]) <= tolerance
    return ok.astype(np.uint8)


def supercover_cells(x0: int, y0: int, x1: int, y1: int) -> np.ndarray:
    """All grid cells touched by the segment between two cell centers.

    Integer line walk; when the segment passes exactly through a cell
    corner both side cells are included. Returns an (N, 2) array of
    (x, y) cells; the visited set is symmetric in the endpoints.
    """
    cells = [(x0, y0)]
    dx = x1 - x0
    dy = y1 - y0
    xstep = 1 if dx >= 0 else -1
    ystep = 1 if dy >= 0 else -1
    dx = abs(dx)
    dy = abs(dy)
    ddx = 2 * dx
    ddy = 2 * dy
    x, y = x0, y0
    if ddx >= ddy:
        error = errorprev = dx
        for _ in range(dx):
            x += xstep
            error += ddy
            if error > ddx:
                y += ystep
                error -= ddx
                if error + errorprev < ddx:
                    cells.append((x, y - ystep))
                elif error + errorprev > ddx:
                    cells.append((x - xstep, y))
                else:
                    cells.append((x, y - ystep))
                    cells.append((x - xstep, y))
            cells.append((x, y))
            errorprev = error
    else:
        error = errorprev = dy
        for _ in range(dy):
            y += ystep
            error += ddx
            if error > ddy:
                x += xstep
                error -= ddy
                if error + errorprev < ddy:
                    cells.append((x - xstep, y))
                elif error + errorprev > ddy:
                    cells.append((x, y - ystep))
                else:
                    cells.append((x - xstep, y))
                    cells.append((x, y - ystep))
            cells.append((x, y))
            errorprev = error
    return np.array(cells, dtype=np.int64)


def box_dilate(mask: np.ndarray, radius: int) -> np.ndarray:
    """Chebyshev (square structuring element) dilation by ``radius`` pixels."""
    if radius <= 0:
        return mask.astype(np.uint8).copy()
    h, w = mask.shape
    out = np.zeros((h, w), dtype=np.uint8)
    src = mask.astype(bool)
    # separable: horizontal pass, then vertical
    horiz = np.zeros((h, w), dtype=bool)
    for d in range(-radius, radius + 1):
        if d < 0:
            horiz[:, : w + d] |= src[:, -d:]
        elif d > 0:
            horiz[:, d:] |= src[:, : w - d]
        else:
            horiz |= src
    vert = np.zeros((h, w), dtype=bool)
    for d in range(-radius, radius + 1):
        if d < 0:
            vert[: h + d, :] |= horiz[-d:, :]
        elif d > 0:
            vert[d:, :] |= horiz[: h - d, :]
        else:
            vert |= horiz
    out[vert] = 1
    return out


def block_counts(mask: np.ndarray, block: int) -> np.ndarray:
    """Per-block count of set pixels over a non-overlapping block grid.

    Border blocks are clipped to the mask extent.
    """
    h, w = mask.shape
    row_edges = np.arange(0, h, block)
    col_edges = np.arange(0, w, block)
    m = mask.astype(np.int64)
    summed = np.add.reduceat(m, row_edges, axis=0)
    summed = np.add.reduceat(summed, col_edges, axis=1)
    return summed
