"""Hot loops of the exhaustive oracle.

The compiled extension is used when it was built; otherwise, or when
``QFV_PURE_PYTHON=1`` is set, the pure-Python reference implementation is.
"""
import os

from . import _pykernels as python_kernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("QFV_PURE_PYTHON", "") != "1":
    BACKEND = "cython"
    _impl = compiled_kernels
else:
    BACKEND = "python"
    _impl = python_kernels

scan_variety = _impl.scan_variety
stability_scan = _impl.stability_scan

__all__ = ["BACKEND", "scan_variety", "stability_scan", "python_kernels", "compiled_kernels"]
