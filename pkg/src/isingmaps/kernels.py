"""
Backend selection for the hot kernels.

The compiled GMP core is used when it imports; otherwise the pure-Python
module takes over. ``ISING_BACKEND=python`` (or ``compiled``) forces a choice
and ``ISING_THREADS`` sets the thread budget of the compiled core.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = ("compiled", "python")


def available() -> list[str]:
    return [name for name in BACKENDS if name == "python" or _ckernel is not None]


def get_backend(name: str | None = None) -> ModuleType:
    name = name or os.environ.get("ISING_BACKEND", "auto")
    if name == "auto":
        return _ckernel if _ckernel is not None else _pykernel
    if name == "python":
        return _pykernel
    if name == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available in this install")
        return _ckernel
    raise ValueError(f"unknown backend {name!r}; expected one of auto, {', '.join(BACKENDS)}")


def thread_budget() -> int:
    raw = os.environ.get("ISING_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"ISING_THREADS must be a positive integer, got {raw!r}") from None
