"""Backend selection for the hot numerical kernels.

The compiled Cython extension is used when present; otherwise the pure-numpy
implementation takes over. Set ``SYMCHAN_BACKEND=pure`` or
``SYMCHAN_BACKEND=compiled`` to force a choice (forcing ``compiled`` raises if
the extension is missing).
"""

import os

_requested = os.environ.get("SYMCHAN_BACKEND", "").strip().lower()

if _requested == "pure":
    from . import pure as _impl
elif _requested == "compiled":
    from . import _kernels as _impl
elif _requested in ("", "auto"):
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import pure as _impl
else:
    raise ImportError(f"unknown SYMCHAN_BACKEND value: {_requested!r}")

BACKEND_NAME = _impl.NAME
expm = _impl.expm
eigh = _impl.eigh
