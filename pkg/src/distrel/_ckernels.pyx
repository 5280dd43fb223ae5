# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernels for contexts with at most 64 attributes.

Rows are attribute bitmasks (bit k = attribute k), one per object.
"""

ctypedef unsigned long long u64


cdef inline u64 _full(int n_attrs) nogil:
    if n_attrs >= 64:
        return <u64>0xFFFFFFFFFFFFFFFF
    return ((<u64>1) << n_attrs) - 1


cdef inline u64 _closure(const u64[::1] rows, u64 mask, u64 full) nogil:
    cdef u64 acc = full
    cdef Py_ssize_t k
    for k in range(rows.shape[0]):
        if rows[k] & mask == mask:
            acc &= rows[k]
    return acc


def intent_closure(const u64[::1] rows, u64 mask, int n_attrs):
    return _closure(rows, mask, _full(n_attrs))


def extent_mask(const u64[::1] rows, u64 mask):
    cdef Py_ssize_t k
    cdef object one = 1
    out = 0
    for k in range(rows.shape[0]):
        if rows[k] & mask == mask:
            out |= one << k
    return out


def next_closure_intents(const u64[::1] rows, int n_attrs):
    cdef u64 full = _full(n_attrs)
    cdef u64 a = _closure(rows, 0, full)
    cdef u64 prefix, bit, b
    cdef int i
    cdef bint found
    out = [a]
    while a != full:
        prefix = a
        found = False
        for i in range(n_attrs - 1, -1, -1):
            bit = (<u64>1) << i
            if prefix & bit:
                prefix ^= bit
                continue
            b = _closure(rows, prefix | bit, full)
            if (b & (bit - 1)) == prefix:
                a = b
                found = True
                break
        if not found:
            break
        out.append(a)
    return out
