"""Scan-kernel backend selection.

The compiled kernel is preferred when the extension built; the pure
Python kernels are the fallback and the reference. Set
``SEMLABEL_PURE_PYTHON=1`` to force the fallback regardless.
"""

from __future__ import annotations

import os

from . import _scan_py

if os.environ.get("SEMLABEL_PURE_PYTHON") == "1":
    kernels = _scan_py
else:
    try:
        from . import _scan_cy as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _scan_py

SCAN_BACKEND: str = kernels.BACKEND_NAME
