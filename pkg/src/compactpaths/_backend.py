"""Kernel backend selection.

Prefers the compiled extension, falls back to the pure-Python kernels.
COMPACTPATHS_BACKEND=pure|compiled forces a choice (compiled raises if
the extension is missing).
"""
from __future__ import annotations

import os

_choice = os.environ.get("COMPACTPATHS_BACKEND", "auto").lower()

if _choice == "pure":
    from . import _kernels_py as _impl

    BACKEND = "pure"
elif _choice == "compiled":
    from . import _kernels as _impl  # type: ignore[attr-defined]

    BACKEND = "compiled"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "pure"

sssp = _impl.sssp
multi_source_bfs = _impl.multi_source_bfs
balls = _impl.balls
region_grow = _impl.region_grow
carve = _impl.carve
tz_clusters = _impl.tz_clusters
induced_diameter = _impl.induced_diameter


def get_backend(name: str):
    """Return the kernel module for `name` ("pure" or "compiled")."""
    if name == "pure":
        from . import _kernels_py

        return _kernels_py
    if name == "compiled":
        from . import _kernels  # type: ignore[attr-defined]

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
