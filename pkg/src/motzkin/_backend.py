"""Pick the kernel implementation once, at import.

The compiled extension is used when it imports cleanly; set
MOTZKIN_PURE_PYTHON=1 to force the pure-Python kernels.
"""
import os

from . import _pykernels

pure = _pykernels

if os.environ.get("MOTZKIN_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    compiled = None
else:
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None
    kernels = compiled if compiled is not None else _pykernels

BACKEND = kernels.NAME
