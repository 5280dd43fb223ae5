"""Backend selection for the closure kernels.

The compiled module is used when it imported and the context fits in 64-bit
rows; otherwise the pure-Python implementation runs.  Set
``DISTREL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from typing import Sequence

from . import _pykernels

try:
    if os.environ.get("DISTREL_PURE_PYTHON"):
        raise ImportError("pure Python forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"
MAX_C_ATTRS = 64


def _use_c(n_attrs: int, backend: str | None) -> bool:
    if backend not in (None, "python", "cython"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "python":
        return False
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        if n_attrs > MAX_C_ATTRS:
            raise ValueError(f"compiled kernels handle at most {MAX_C_ATTRS} attributes")
        return True
    return _ckernels is not None and n_attrs <= MAX_C_ATTRS


def pack_rows(rows: Sequence[int]) -> array:
    return array("Q", rows)


def intent_closure(rows: Sequence[int], mask: int, n_attrs: int,
                   backend: str | None = None) -> int:
    if _use_c(n_attrs, backend):
        if not isinstance(rows, array):
            rows = pack_rows(rows)
        return _ckernels.intent_closure(rows, mask, n_attrs)
    return _pykernels.intent_closure(rows, mask, n_attrs)


def extent_mask(rows: Sequence[int], mask: int, n_attrs: int,
                backend: str | None = None) -> int:
    if _use_c(n_attrs, backend):
        if not isinstance(rows, array):
            rows = pack_rows(rows)
        return _ckernels.extent_mask(rows, mask)
    return _pykernels.extent_mask(rows, mask)


def next_closure_intents(rows: Sequence[int], n_attrs: int,
                         backend: str | None = None) -> list[int]:
    if _use_c(n_attrs, backend):
        if not isinstance(rows, array):
            rows = pack_rows(rows)
        return _ckernels.next_closure_intents(rows, n_attrs)
    return _pykernels.next_closure_intents(rows, n_attrs)
