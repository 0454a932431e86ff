"""Backend selection for the convolution kernels.

The compiled extension is used when it imported cleanly; set
REPLICA_PURE_PYTHON=1 to force the fallback.
"""

import os

if os.environ.get("REPLICA_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"

conv_int = _impl.conv_int
conv_int_school = _impl.conv_int_school
conv_modp = _impl.conv_modp
KARATSUBA_CUTOFF = _impl.KARATSUBA_CUTOFF
