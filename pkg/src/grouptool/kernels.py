"""Backend selection for the word kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module is used.  Setting
``GROUPTOOL_PURE_PYTHON=1`` forces the fallback.
"""

import os

from grouptool import _pykernels

if os.environ.get("GROUPTOOL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from grouptool import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

free_reduce = _impl.free_reduce
dehn_reduce = _impl.dehn_reduce
prefix_min = _impl.prefix_min
exponent_sums = _impl.exponent_sums


def available_backends():
    """Map backend name to kernel module for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from grouptool import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
