"""Kernel backend selection.

Prefers the compiled extension when it was built; falls back to the pure
Python twin otherwise. Set ICOSTEGO_PURE_PYTHON=1 to force the fallback
(used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("ICOSTEGO_PURE_PYTHON"):
    from icostego import _kernels_py as _impl
else:
    try:
        from icostego import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from icostego import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = "python" if _impl.__name__.endswith("_kernels_py") else "compiled"

ELIGIBLE_MIN = _impl.ELIGIBLE_MIN

count_eligible = _impl.count_eligible
eligible_indices = _impl.eligible_indices
write_lsbs = _impl.write_lsbs
read_lsbs = _impl.read_lsbs
lsb_counts = _impl.lsb_counts
alpha_histogram = _impl.alpha_histogram
randomize_lsbs = _impl.randomize_lsbs
normalize_extremes = _impl.normalize_extremes
classify_diff = _impl.classify_diff
