"""Kernel selection: compiled core when importable, pure Python otherwise.

``EVENCYCLE_BACKEND`` may be ``auto`` (default), ``python`` or ``compiled``;
``compiled`` fails at import if the extension is missing.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

try:
    from evencycle import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

# the compiled kernels keep elements in uint64 words
MAX_COMPILED_DEGREE = 64

_choice = os.environ.get("EVENCYCLE_BACKEND", "auto").lower()
if _choice not in ("auto", "python", "compiled"):
    raise ImportError(f"EVENCYCLE_BACKEND must be auto, python or compiled, not {_choice!r}")
if _choice == "compiled" and _ckernels is None:
    raise ImportError("EVENCYCLE_BACKEND=compiled but evencycle._ckernels is not built")


def compiled_available() -> bool:
    return _ckernels is not None


def active() -> str:
    """Name of the backend used for fields that fit the compiled kernels."""
    if _choice == "python" or _ckernels is None:
        return "python"
    return "compiled"


def set_backend(name: str) -> None:
    global _choice
    if name not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and _ckernels is None:
        raise RuntimeError("compiled kernels are not available in this build")
    _choice = name


@contextmanager
def use_backend(name: str):
    prev = _choice
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def kernels(d: int):
    """The compiled kernel module for field degree ``d``, or None."""
    if _ckernels is None or _choice == "python" or d > MAX_COMPILED_DEGREE:
        return None
    return _ckernels
