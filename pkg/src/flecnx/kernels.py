"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``FLECNX_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if not os.environ.get("FLECNX_PURE"):
    try:
        from . import _ckernels as compiled_kernels
    except ImportError:  # pragma: no cover - depends on the build
        compiled_kernels = None

_active = compiled_kernels or python_kernels
BACKEND = "compiled" if compiled_kernels is not None else "python"

monoid_tables = _active.monoid_tables
canonical_form = _active.canonical_form
