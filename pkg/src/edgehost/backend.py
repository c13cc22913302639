"""Kernel backend selection.

The compiled extension is preferred when importable; set EDGEHOST_BACKEND=python
to force the pure-Python loops (useful for debugging and for the backend
benchmark). Both backends implement the same arithmetic in the same order and
produce bit-identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

_FORCED = os.environ.get("EDGEHOST_BACKEND", "").strip().lower()

if _FORCED in ("", "cython", "c"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _FORCED:
            raise ImportError(
                "EDGEHOST_BACKEND requested the compiled kernels but the "
                "extension is not built; reinstall with a C compiler available")
        _impl = _pykernels
elif _FORCED == "python":
    _impl = _pykernels
else:
    raise ValueError(f"unknown EDGEHOST_BACKEND value: {_FORCED!r}")

BACKEND = _impl.BACKEND_NAME

ftpl_family_run = _impl.ftpl_family_run
alpha_rr_run = _impl.alpha_rr_run
offline_dp = _impl.offline_dp
