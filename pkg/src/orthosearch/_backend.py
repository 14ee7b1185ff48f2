"""Select the compiled kernels when importable, else the numpy fallback.

Set ``ORTHOSEARCH_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("ORTHOSEARCH_PURE_PYTHON", "") not in ("", "0"):
    kernels = _fallback
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        kernels = _fallback
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"
