"""Hot kernels: compiled extension when available, pure Python otherwise.

Set ``HEXALINK_PURE=1`` to force the pure-Python implementation.
"""
import os

from . import _pure

if os.environ.get("HEXALINK_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

dq_mul = _impl.dq_mul
dq_mul_f64 = _impl.dq_mul_f64
bareiss_rank = _impl.bareiss_rank

BACKEND = "compiled" if _impl is not _pure else "pure"

__all__ = ["dq_mul", "dq_mul_f64", "bareiss_rank", "BACKEND"]
