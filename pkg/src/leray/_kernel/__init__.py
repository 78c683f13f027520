"""Kernel backend selection.

The Smith normal form inner loop is available as a compiled Cython
extension (built at install time when Cython and a C compiler are
present) and as a pure-Python fallback.  The compiled backend is
preferred; set ``LERAY_KERNEL=pure`` to force the fallback.  Both
backends implement the same algorithm with the same pivoting rule and
produce identical output.
"""

import os

from . import pure as _pure

BACKEND = "pure"
smith_with_transforms = _pure.smith_with_transforms

if os.environ.get("LERAY_KERNEL", "").lower() not in ("pure", "python"):
    try:
        from ._csnf import smith_with_transforms as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "c"
        smith_with_transforms = _compiled

__all__ = ["smith_with_transforms", "BACKEND"]
