"""Backend selection for the refinement kernels.

The compiled extension is used when it imports; setting ``ISOKIT_PURE=1``
forces the pure-Python fallback.  ``use_backend`` switches at runtime (used
by the benchmark and the equivalence tests).
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels

_active = _pykernels if os.environ.get("ISOKIT_PURE") == "1" or _ckernels is None else _ckernels


def available_backends():
    return sorted(_BACKENDS)


def backend_name():
    return _active.BACKEND


def use_backend(name):
    """Switch the process-wide backend and return the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} is not available (have {available_backends()})")
    prev = _active.BACKEND
    _active = _BACKENDS[name]
    return prev


def get(name=None):
    return _active if name is None else _BACKENDS[name]


def cr_round(indptr, indices, arc_out, arc_in, colors, n_arc):
    return _active.cr_round(indptr, indices, arc_out, arc_in, colors, n_arc)


def equitable(indptr, indices, label, n_labels, colors):
    return _active.equitable(indptr, indices, label, n_labels, colors)
