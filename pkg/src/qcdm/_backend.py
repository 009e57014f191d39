"""Select the kernel implementation once, at import time."""
import os

from . import _pykernels

if os.environ.get("QCDM_PURE_PYTHON"):
    kernels = _pykernels
    NAME = "python"
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels
        NAME = "python"
    else:
        NAME = "cython"
