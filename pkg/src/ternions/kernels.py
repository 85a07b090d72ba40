"""Kernel backend selection.

The compiled extension is preferred when importable; set TERNIONS_PURE=1
to force the pure-Python kernel (used by the benchmark and by tests that
cross-check the two backends).
"""

import os

if os.environ.get("TERNIONS_PURE") == "1":
    from . import _pycore as _impl

    BACKEND = "python"
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _pycore as _impl

        BACKEND = "python"

Kernel = _impl.Kernel
MAX_DIM = _impl.MAX_DIM
