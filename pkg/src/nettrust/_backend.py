"""Pick the KDE kernel implementation at import time.

The compiled extension is used when it was built; otherwise the numpy
version.  Setting ``NETTRUST_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import os

from . import _kde_py

BACKEND = "python"
reflected_kde = _kde_py.reflected_kde

if not os.environ.get("NETTRUST_PURE_PYTHON"):
    try:
        from . import _kde_ext
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        reflected_kde = _kde_ext.reflected_kde

IMPLEMENTATIONS = {"python": _kde_py.reflected_kde}
try:
    from . import _kde_ext as _ext
    IMPLEMENTATIONS["cython"] = _ext.reflected_kde
except ImportError:
    pass
