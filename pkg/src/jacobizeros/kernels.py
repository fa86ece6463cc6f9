"""Kernel selection: compiled MPFR extension if importable, else pure Python.

Set ``JACOBIZEROS_PURE=1`` in the environment to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("JACOBIZEROS_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
aberth = _impl.aberth
pcf_dmh_array = _impl.pcf_dmh_array
q_local_array = _impl.q_local_array
q_local_abs_grid = _impl.q_local_abs_grid


def available_backends():
    """Mapping of back-end name to module for every importable kernel."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
