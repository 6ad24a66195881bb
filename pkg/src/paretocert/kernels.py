"""Select the integer kernels at import time.

The compiled module is used when it was built; set ``PARETOCERT_PURE=1``
to force the pure-Python implementation (handy for benchmarking and for
checking that both agree).
"""

import os

BACKEND = "python"

if os.environ.get("PARETOCERT_PURE", "") not in ("", "0"):
    from ._kernels_py import adjacent_pairs, combine, dot, pivot, primitive
else:
    try:
        from ._ckernels import adjacent_pairs, combine, dot, pivot, primitive

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import adjacent_pairs, combine, dot, pivot, primitive

__all__ = ["BACKEND", "adjacent_pairs", "combine", "dot", "pivot", "primitive"]
