"""Kernel dispatch: compiled speedups when available, pure Python otherwise.

Set ``VALPERM_PURE=1`` to force the pure-Python kernels even when the
compiled extension is installed (used by the benchmark and the equivalence
tests).
"""

import os

from valperm import _kernels_py

if os.environ.get("VALPERM_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from valperm import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

IMPL = _impl.IMPL
HAVE_SPEEDUPS = IMPL == "cython"

vec_gcd_reduce = _impl.vec_gcd_reduce
dot = _impl.dot
rref = _impl.rref
rank = _impl.rank
nullspace = _impl.nullspace
combine_ray = _impl.combine_ray
