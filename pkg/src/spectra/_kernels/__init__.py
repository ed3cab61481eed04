"""Hot numeric kernels with two interchangeable backends.

The numba backend JIT-compiles the dense cyclic-Jacobi eigensolver and the
all-sources BFS; the numpy backend runs the same algorithms vectorized.
Selection happens once at import from the ``SPECTRA_KERNELS`` environment
variable: ``numba`` (default when numba imports), ``numpy``, or ``auto``.

Both backends export:
    jacobi_eigh(a)            -> (eigenvalues ascending, eigenvector columns)
    all_pairs_distances(...)  -> n x n int64 BFS distance matrix (-1 unreachable)
"""
from __future__ import annotations

import os

_choice = os.environ.get("SPECTRA_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"SPECTRA_KERNELS must be 'auto', 'numba' or 'numpy', got {_choice!r}"
    )

if _choice in ("auto", "numba"):
    try:
        from . import nb_backend as _impl
        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import np_backend as _impl
        BACKEND = "numpy"
else:
    from . import np_backend as _impl
    BACKEND = "numpy"

jacobi_eigh = _impl.jacobi_eigh
all_pairs_distances = _impl.all_pairs_distances


def active_backend() -> str:
    """Name of the backend selected at import time."""
    return BACKEND
