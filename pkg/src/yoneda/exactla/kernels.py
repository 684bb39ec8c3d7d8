"""Backend selection for the modular hot loops.

The compiled extension is preferred; set ``YONEDA_PURE_PYTHON=1`` to force
the numpy fallback (the benchmark and the test-suite use this to compare).
"""

import os

from . import _pykernels

BACKEND = "python"
rref_modp = _pykernels.rref_modp
bilinear_modp = _pykernels.bilinear_modp

if os.environ.get("YONEDA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "compiled"
        rref_modp = _ckernels.rref_modp
        bilinear_modp = _ckernels.bilinear_modp

__all__ = ["BACKEND", "rref_modp", "bilinear_modp"]
