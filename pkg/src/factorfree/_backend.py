"""Pick the enumeration kernels at import time.

The compiled extension is preferred; ``FACTORFREE_BACKEND=python`` forces the
pure-Python fallback (``=cython`` makes a missing extension an error).
"""

import os

from . import _pykernels

_choice = os.environ.get("FACTORFREE_BACKEND", "auto").lower()

if _choice == "python":
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        if _choice == "cython":
            raise
        kernels = _pykernels
        BACKEND = "python"


def available_backends() -> dict:
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
