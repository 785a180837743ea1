"""Kernel selection.

The compiled ``_closure`` extension is used when it was built; otherwise the
pure-Python twin is used. Setting ``GUFO_CHECK_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _closure_py

IMPLEMENTATIONS = {"python": _closure_py.strict_closure}

try:
    from . import _closure as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    IMPLEMENTATIONS["compiled"] = _compiled.strict_closure

if _compiled is not None and os.environ.get("GUFO_CHECK_PURE", "") not in ("1", "true", "yes"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

strict_closure = IMPLEMENTATIONS[BACKEND]
