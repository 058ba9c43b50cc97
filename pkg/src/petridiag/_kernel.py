"""Kernel selection.

The compiled ``_ckernel`` extension is used when it was built; otherwise the
pure-Python ``_pykernel`` takes over. Set ``PETRIDIAG_KERNEL=python`` to force
the fallback.
"""

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = {"python": _pykernel}
if _ckernel is not None:
    BACKENDS["cython"] = _ckernel

_choice = os.environ.get("PETRIDIAG_KERNEL", "").strip().lower()
if _choice and _choice not in BACKENDS:
    raise ImportError(
        f"PETRIDIAG_KERNEL={_choice!r} is not available; have {sorted(BACKENDS)}"
    )
active = BACKENDS[_choice] if _choice else BACKENDS.get("cython", _pykernel)


def backend_name():
    return active.NAME
