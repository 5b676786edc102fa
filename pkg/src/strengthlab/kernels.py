"""Rank kernels: the compiled GMP build when importable, else pure Python.

Set ``STRENGTHLAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("STRENGTHLAB_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    bareiss_rank_int = _compiled.bareiss_rank_int
    bareiss_rank_gauss = _compiled.bareiss_rank_gauss
    BACKEND = "gmp"
else:
    bareiss_rank_int = _kernels_py.bareiss_rank_int
    bareiss_rank_gauss = _kernels_py.bareiss_rank_gauss
    BACKEND = "python"
