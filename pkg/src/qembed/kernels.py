"""Backend selection for the Hermitian eigensolver kernel.

The compiled kernel is used when it was built; otherwise the pure-Python
version is loaded. Setting ``QEMBED_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _jacobi_py

try:
    if os.environ.get("QEMBED_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from ._jacobi_ext import jacobi_sweeps
    BACKEND = "cython"
except ImportError:
    jacobi_sweeps = _jacobi_py.jacobi_sweeps
    BACKEND = "python"


def available_backends():
    """Map backend name to its ``jacobi_sweeps`` callable."""
    backends = {"python": _jacobi_py.jacobi_sweeps}
    try:
        from ._jacobi_ext import jacobi_sweeps as compiled
    except ImportError:
        pass
    else:
        backends["cython"] = compiled
    return backends
