"""Pure-Python closure kernels; same contract as the compiled module.

Rows are attribute bitmasks (bit k = attribute k), one per object.  There is
no limit on the number of attributes here.
"""

from __future__ import annotations

from typing import Sequence


def intent_closure(rows: Sequence[int], mask: int, n_attrs: int) -> int:
    acc = (1 << n_attrs) - 1
    for r in rows:
        if r & mask == mask:
            acc &= r
    return acc


def extent_mask(rows: Sequence[int], mask: int) -> int:
    out = 0
    for k, r in enumerate(rows):
        if r & mask == mask:
            out |= 1 << k
    return out


def next_closure_intents(rows: Sequence[int], n_attrs: int) -> list[int]:
    """All closed attribute sets, ascending with attribute 0 most significant."""
    full = (1 << n_attrs) - 1
    a = intent_closure(rows, 0, n_attrs)
    out = [a]
    while a != full:
        prefix = a
        for i in range(n_attrs - 1, -1, -1):
            bit = 1 << i
            if prefix & bit:
                prefix ^= bit
                continue
            b = intent_closure(rows, prefix | bit, n_attrs)
            if b & (bit - 1) == prefix:
                a = b
                break
        else:
            break
        out.append(a)
    return out
