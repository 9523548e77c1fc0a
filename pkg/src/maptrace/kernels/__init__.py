"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension (``_ckernels``, built from Cython) is preferred;
if it is missing the numpy/Python fallback (``_pykernels``) is selected
at import time. ``MAPTRACE_KERNELS=python`` forces the fallback,
``MAPTRACE_KERNELS=cython`` fails loudly when the extension is absent.

``BACKEND`` names the active implementation.
"""

from __future__ import annotations

import os

_forced = os.environ.get("MAPTRACE_KERNELS", "").strip().lower()

if _forced == "python":
    from . import _pykernels as _impl

    BACKEND = "python"
elif _forced == "cython":
    from . import _ckernels as _impl  # type: ignore[no-redef]

    BACKEND = "cython"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

accumulated_dtw_cost = _impl.accumulated_dtw_cost
assign_labels = _impl.assign_labels
binarize_linf = _impl.binarize_linf
supercover_cells = _impl.supercover_cells
box_dilate = _impl.box_dilate
block_counts = _impl.block_counts

__all__ = [
    "BACKEND",
    "accumulated_dtw_cost",
    "assign_labels",
    "binarize_linf",
    "supercover_cells",
    "box_dilate",
    "block_counts",
]
