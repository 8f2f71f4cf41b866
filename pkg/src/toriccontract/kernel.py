"""Select the reduction kernel at import time.

The compiled ``_kernel_c`` extension is used when it was built; otherwise the
pure-Python ``_kernel_py`` fallback.  Setting ``TORICCONTRACT_PURE=1`` forces
the fallback.
"""
from __future__ import annotations

import os

if os.environ.get("TORICCONTRACT_PURE", "") not in ("", "0"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_c as _impl
    except ImportError:
        from . import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
order_key = _impl.order_key
divides = _impl.divides
find_divisor = _impl.find_divisor
exp_add = _impl.exp_add
exp_sub = _impl.exp_sub
exp_lcm = _impl.exp_lcm
sub_scaled = _impl.sub_scaled
normal_form = _impl.normal_form
