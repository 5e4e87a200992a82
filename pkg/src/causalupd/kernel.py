"""Backend selection for the least-model closure kernel.

The compiled extension is used when it was built; otherwise the pure-Python
implementation takes over.  Setting ``UPD_KERNEL=python`` forces the
fallback, which is handy for benchmarking and for debugging.
"""

from __future__ import annotations

import os

from . import _closure_py

BACKEND = "python"
prepare = _closure_py.prepare
closure = _closure_py.closure

if os.environ.get("UPD_KERNEL", "").lower() != "python":
    try:
        from . import _closure as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        BACKEND = "compiled"
        prepare = _compiled.prepare
        closure = _compiled.closure

__all__ = ["BACKEND", "prepare", "closure"]
