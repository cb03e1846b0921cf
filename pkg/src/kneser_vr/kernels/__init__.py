"""Hot numeric kernels with two interchangeable backends.

The numba backend is used when numba imports cleanly and the environment
variable ``KNESER_VR_JIT`` is not set to ``0``.  Otherwise the pure
numpy/Python backend is selected.  Both expose the same functions and are
tested against each other.
"""

import importlib
import os

from . import numpy_impl

_WANT_JIT = os.environ.get("KNESER_VR_JIT", "1").strip().lower() not in ("0", "false", "no", "off")


def _load_numba():
    return importlib.import_module(__name__ + ".numba_impl")


_numba = None
if _WANT_JIT:
    try:
        _numba = _load_numba()
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _numba = None

backend = _numba if _numba is not None else numpy_impl
BACKEND_NAME = "numba" if _numba is not None else "numpy"


def get_backend(name=None):
    """Return a kernel module by name (``"numba"``/``"numpy"``), default the active one."""
    if name is None:
        return backend
    if name == "numpy":
        return numpy_impl
    if name == "numba":
        return _numba if _numba is not None else _load_numba()
    raise ValueError(f"unknown kernel backend {name!r}")


__all__ = ["backend", "BACKEND_NAME", "get_backend", "numpy_impl"]
