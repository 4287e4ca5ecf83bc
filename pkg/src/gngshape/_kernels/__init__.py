"""Kernel backend selection.

The compiled Cython core is preferred; the pure-numpy fallback is used when
the extension is missing or when GNGSHAPE_PURE is set in the environment.
Both backends are bit-identical, so the choice only affects speed.
"""

import os

if os.environ.get("GNGSHAPE_PURE"):
    from . import fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import fallback as _impl

BACKEND = _impl.NAME
gng_block = _impl.gng_block
dp_cost = _impl.dp_cost

__all__ = ["BACKEND", "gng_block", "dp_cost"]
