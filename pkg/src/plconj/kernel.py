"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``PLCONJ_PURE_KERNEL=1`` to force the pure-Python kernel (used by the
equivalence tests and the benchmark).
"""

import os

if os.environ.get("PLCONJ_PURE_KERNEL"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

dy_canon = _impl.dy_canon
dy_cmp = _impl.dy_cmp
dy_add = _impl.dy_add
dy_sub = _impl.dy_sub
dy_mul = _impl.dy_mul
dy_shift = _impl.dy_shift
seg_slope_exp = _impl.seg_slope_exp
canon_nodes = _impl.canon_nodes
invert_nodes = _impl.invert_nodes
eval_dyadic = _impl.eval_dyadic
eval_dyadic_inv = _impl.eval_dyadic_inv
compose_nodes = _impl.compose_nodes
identity_nodes = _impl.identity_nodes
power_nodes = _impl.power_nodes
