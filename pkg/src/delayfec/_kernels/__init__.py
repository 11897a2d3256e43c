"""Hot-loop kernels with a compiled core and a pure Python fallback.

The compiled extension is used when it imports; otherwise the numpy/Python
implementation in :mod:`._pykernels` is selected.  Both produce identical
results.  ``use_backend("python")`` forces the fallback (tests and
benchmarks use it to compare the two).
"""
from __future__ import annotations

from . import _pykernels as python

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

BACKEND = "compiled" if compiled is not None else "python"
_impl = compiled if compiled is not None else python


def use_backend(name: str) -> None:
    global BACKEND, _impl
    if name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available; build the extension first")
        _impl = compiled
    elif name == "python":
        _impl = python
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def ge_chain(seed, length, alpha, beta, eps0, eps1):
    return _impl.ge_chain(seed, length, alpha, beta, eps0, eps1)


def prefix_recovery(columns, y, erased, deadlines, pending, p, scan_all=True):
    return _impl.prefix_recovery(columns, y, erased, deadlines, pending, p, scan_all)


splitmix64 = python.splitmix64
