"""Numeric kernel backends.

The environment variable SATOFFLOAD_BACKEND picks the implementation at
import time:

  auto   (default) jit backend when numba imports cleanly, else numpy
  numba  require the jit backend; ImportError if unavailable
  numpy  force the pure-numpy reference path

Both backends expose identical functions; tests assert their agreement.
"""

import os

_choice = os.environ.get("SATOFFLOAD_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"SATOFFLOAD_BACKEND must be 'auto', 'numba' or 'numpy', got {_choice!r}")

if _choice == "numpy":
    from . import numpy_impl as impl
    _active = "numpy"
else:
    try:
        from . import numba_impl as impl
        _active = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import numpy_impl as impl
        _active = "numpy"


def active_backend():
    """Name of the kernel backend selected at import time."""
    return _active
