"""Hot-kernel backend selection.

Two interchangeable implementations exist: a compiled Cython extension
(``_ckern``) and a pure NumPy fallback (``_pykern``).  The compiled one is
preferred when importable.  Set ``MDGCODES_BACKEND=python`` to force the
fallback, or ``MDGCODES_BACKEND=c`` to require the extension (import fails
loudly if it was not built).

All kernels take adjacency as a C-contiguous ``(V, ceil(V/64))`` uint64
matrix in little-endian bit order (``MDGraph.packed_rows``).
"""

import os

from . import _pykern

_choice = os.environ.get("MDGCODES_BACKEND")
if _choice not in (None, "", "c", "python"):
    raise ValueError(f"MDGCODES_BACKEND must be 'c' or 'python', got {_choice!r}")

if _choice == "python":
    _impl = _pykern
else:
    try:
        from . import _ckern as _impl
    except ImportError:
        if _choice == "c":
            raise
        _impl = _pykern

BACKEND = _impl.BACKEND_NAME
recover_distance_matrix = _impl.recover_distance_matrix
common_neighbor_matrix = _impl.common_neighbor_matrix
cliques_at_least = _impl.cliques_at_least


def available_backends():
    """Names of importable backends, preferred first."""
    names = ["python"]
    try:
        from . import _ckern  # noqa: F401
        names.insert(0, "c")
    except ImportError:
        pass
    return names


def get_backend(name):
    """Explicit backend module access (benchmarks, parity tests)."""
    if name == "python":
        return _pykern
    if name == "c":
        from . import _ckern
        return _ckern
    raise ValueError(f"unknown backend {name!r}")
