# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors _pykernels exactly; parity is enforced by tests.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def accumulated_dtw_cost(cnp.float64_t[:, :] a, cnp.float64_t[:, :] b) -> float:
    """Minimal cumulative DTW cost between two 2-D point sequences."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] acc_arr = np.empty((n, m), dtype=np.float64)
    cdef cnp.float64_t[:, :] acc = acc_arr
    cdef Py_ssize_t i, j
    cdef double dx, dy, c, best

    dx = a[0, 0] - b[0, 0]
    dy = a[0, 1] - b[0, 1]
    acc[0, 0] = sqrt(dx * dx + dy * dy)
    for j in range(1, m):
        dx = a[0, 0] - b[j, 0]
        dy = a[0, 1] - b[j, 1]
        acc[0, j] = acc[0, j - 1] + sqrt(dx * dx + dy * dy)
    for i in range(1, n):
        dx = a[i, 0] - b[0, 0]
        dy = a[i, 1] - b[0, 1]
        acc[i, 0] = acc[i - 1, 0] + sqrt(dx * dx + dy * dy)
        for j in range(1, m):
            dx = a[i, 0] - b[j, 0]
            dy = a[i, 1] - b[j, 1]
            c = sqrt(dx * dx + dy * dy)
            best = acc[i - 1, j - 1]
            if acc[i - 1, j] < best:
                best = acc[i - 1, j]
            if acc[i, j - 1] < best:
                best = acc[i, j - 1]
            acc[i, j] = c + best
    return float(acc[n - 1, m - 1])


def assign_labels(cnp.float64_t[:, :] pixels, cnp.float64_t[:, :] centroids):
    """Nearest-centroid assignment: returns (labels, squared distances)."""
    cdef Py_ssize_t n = pixels.shape[0]
    cdef Py_ssize_t k = centroids.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] labels_arr = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dists_arr = np.empty(n, dtype=np.float64)
    cdef cnp.int32_t[:] labels = labels_arr
    cdef cnp.float64_t[:] dists = dists_arr
    cdef Py_ssize_t i, j
    cdef double d0, d1, d2, d, best
    cdef int best_j

    for i in range(n):
        best = 1e308
        best_j = 0
        for j in range(k):
            d0 = pixels[i, 0] - centroids[j, 0]
            d1 = pixels[i, 1] - centroids[j, 1]
            d2 = pixels[i, 2] - centroids[j, 2]
            d = d0 * d0 + d1 * d1 + d2 * d2
            if d < best:
                best = d
                best_j = <int>j
        labels[i] = best_j
        dists[i] = best
    return labels_arr, dists_arr


def binarize_linf(cnp.uint8_t[:, :, :] image, cnp.float64_t[:] centroid, double tolerance):
    """Per-pixel L-infinity test against an RGB centroid."""
    cdef Py_ssize_t h = image.shape[0]
    cdef Py_ssize_t w = image.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out_arr = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] out = out_arr
    cdef Py_ssize_t y, x
    cdef double c0 = centroid[0], c1 = centroid[1], c2 = centroid[2]

    for y in range(h):
        for x in range(w):
            if (fabs(image[y, x, 0] - c0) <= tolerance
                    and fabs(image[y, x, 1] - c1) <= tolerance
                    and fabs(image[y, x, 2] - c2) <= tolerance):
                out[y, x] = 1
    return out_arr


def supercover_cells(long x0, long y0, long x1, long y1):
    """All grid cells touched by the segment between two cell centers."""
    cdef long dx = x1 - x0
    cdef long dy = y1 - y0
    cdef long xstep = 1 if dx >= 0 else -1
    cdef long ystep = 1 if dy >= 0 else -1
    if dx < 0:
        dx = -dx
    if dy < 0:
        dy = -dy
    cdef long ddx = 2 * dx
    cdef long ddy = 2 * dy
    cdef long x = x0, y = y0
    cdef long error, errorprev, i
    # worst case: one cell per step plus two corner cells per step
    cdef long cap = 3 * (dx + dy) + 4
    cdef cnp.ndarray[cnp.int64_t, ndim=2] cells_arr = np.empty((cap, 2), dtype=np.int64)
    cdef cnp.int64_t[:, :] cells = cells_arr
    cdef Py_ssize_t n = 0

    cells[n, 0] = x0
    cells[n, 1] = y0
    n += 1
    if ddx >= ddy:
        error = errorprev = dx
        for i in range(dx):
            x += xstep
            error += ddy
            if error > ddx:
                y += ystep
                error -= ddx
                if error + errorprev < ddx:
                    cells[n, 0] = x
                    cells[n, 1] = y - ystep
                    n += 1
                elif error + errorprev > ddx:
                    cells[n, 0] = x - xstep
                    cells[n, 1] = y
                    n += 1
                else:
                    cells[n, 0] = x
                    cells[n, 1] = y - ystep
                    n += 1
                    cells[n, 0] = x - xstep
                    cells[n, 1] = y
                    n += 1
            cells[n, 0] = x
            cells[n, 1] = y
            n += 1
            errorprev = error
    else:
        error = errorprev = dy
        for i in range(dy):
            y += ystep
            error += ddx
            if error > ddy:
                x += xstep
                error -= ddy
                if error + errorprev < ddy:
                    cells[n, 0] = x - xstep
                    cells[n, 1] = y
                    n += 1
                elif error + errorprev > ddy:
                    cells[n, 0] = x
                    cells[n, 1] = y - ystep
                    n += 1
                else:
                    cells[n, 0] = x - xstep
                    cells[n, 1] = y
                    n += 1
                    cells[n, 0] = x
                    cells[n, 1] = y - ystep
                    n += 1
            cells[n, 0] = x
            cells[n, 1] = y
            n += 1
            errorprev = error
    return cells_arr[:n].copy()


def box_dilate(cnp.uint8_t[:, :] mask, int radius):
    """Chebyshev (square structuring element) dilation by ``radius`` pixels."""
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] horiz_arr = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out_arr = np.zeros((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] horiz = horiz_arr
    cdef cnp.uint8_t[:, :] out = out_arr
    cdef Py_ssize_t y, x
    cdef Py_ssize_t lo, hi, d

    if radius <= 0:
        for y in range(h):
            for x in range(w):
                out[y, x] = 1 if mask[y, x] else 0
        return out_arr

    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                lo = x - radius
                if lo < 0:
                    lo = 0
                hi = x + radius
                if hi >= w:
                    hi = w - 1
                for d in range(lo, hi + 1):
                    horiz[y, d] = 1
    for y in range(h):
        for x in range(w):
            if horiz[y, x]:
                lo = y - radius
                if lo < 0:
                    lo = 0
                hi = y + radius
                if hi >= h:
                    hi = h - 1
                for d in range(lo, hi + 1):
                    out[d, x] = 1
    return out_arr


def block_counts(cnp.uint8_t[:, :] mask, int block):
    """Per-block count of set pixels over a non-overlapping block grid."""
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    cdef Py_ssize_t rows = (h + block - 1) // block
    cdef Py_ssize_t cols = (w + block - 1) // block
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out_arr = np.zeros((rows, cols), dtype=np.int64)
    cdef cnp.int64_t[:, :] out = out_arr
    cdef Py_ssize_t y, x

    for y in range(h):
        for x in range(w):
            if mask[y, x]:
                out[y // block, x // block] += 1
    return out_arr
