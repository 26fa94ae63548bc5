"""Backend selection for the partial-sum kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``PKSPECIAL_PURE`` is set to a non-empty value other
than ``0``, the pure-Python implementation is used.
"""
from __future__ import annotations

import os

from . import _pykernels

_force_pure = os.environ.get("PKSPECIAL_PURE", "") not in ("", "0")

if _force_pure:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

paired_partial = _impl.paired_partial
hurwitz_partial = _impl.hurwitz_partial
digamma_partial = _impl.digamma_partial
weierstrass_log_partial = _impl.weierstrass_log_partial

__all__ = [
    "BACKEND",
    "paired_partial",
    "hurwitz_partial",
    "digamma_partial",
    "weierstrass_log_partial",
]
