"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over. ``PROGLAB_PURE=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("PROGLAB_PURE"):
    kernels = _pykernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _pykernels

BACKENDS = {"python": _pykernels}
if kernels is not _pykernels:
    BACKENDS["cython"] = kernels


def get(name=None):
    """Return the named backend module, or the active one."""
    if name is None:
        return kernels
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None
