# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for functional-graph analysis and exact enumeration.

Per mapping: cyclic points by iterated in-degree-zero peeling, components by
union-find over the edges {i, f(i)}, cycle lengths by walking f restricted to
the cyclic points.  O(n) time, three reusable length-n scratch arrays plus
the union-find forest.
"""

import numpy as np

cimport numpy as cnp
from libc.string cimport memset

cnp.import_array()

BACKEND = "cython"

ctypedef long long i64


cdef inline i64 _find(i64* parent, i64 v) noexcept nogil:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


cdef void _analyze_row(const i64* f, i64 n,
                       i64* indeg, i64* stack, unsigned char* removed,
                       i64* cyc_id, i64* cyc_len, i64* cyc_first,
                       i64* parent, i64* comp_size, i64* comp_cyclen, i64* comp_minlab,
                       i64* out_row) noexcept nogil:
    cdef i64 i, v, u, sp, cid, length, r, ra, rb
    cdef i64 l1, l2, l3, l4, total_cyc
    cdef i64 best, bs, bc, bm

    memset(indeg, 0, n * sizeof(i64))
    for i in range(n):
        indeg[f[i]] += 1
    sp = 0
    for i in range(n):
        removed[i] = 0
        if indeg[i] == 0:
            stack[sp] = i
            sp += 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        removed[v] = 1
        u = f[v]
        indeg[u] -= 1
        if indeg[u] == 0:
            stack[sp] = u
            sp += 1

    memset(cyc_id, 0xFF, n * sizeof(i64))
    cid = 0
    total_cyc = 0
    l1 = l2 = l3 = l4 = 0
    for i in range(n):
        if removed[i] == 0 and cyc_id[i] < 0:
            length = 0
            u = i
            while cyc_id[u] < 0:
                cyc_id[u] = cid
                length += 1
                u = f[u]
            cyc_len[cid] = length
            cyc_first[cid] = i
            total_cyc += length
            if length > l1:
                l4 = l3; l3 = l2; l2 = l1; l1 = length
            elif length > l2:
                l4 = l3; l3 = l2; l2 = length
            elif length > l3:
                l4 = l3; l3 = length
            elif length > l4:
                l4 = length
            cid += 1

    for i in range(n):
        parent[i] = i
    for i in range(n):
        ra = _find(parent, i)
        rb = _find(parent, f[i])
        if ra != rb:
            parent[rb] = ra

    for i in range(n):
        comp_size[i] = 0
        comp_minlab[i] = n
        comp_cyclen[i] = 0
    for i in range(n):
        r = _find(parent, i)
        comp_size[r] += 1
        if i < comp_minlab[r]:
            comp_minlab[r] = i
    for i in range(cid):
        r = _find(parent, cyc_first[i])
        comp_cyclen[r] = cyc_len[i]

    # largest component: size desc, contained-cycle length desc, min label asc
    best = -1
    bs = bc = -1
    bm = n + 1
    for i in range(n):
        if parent[i] == i:
            if (comp_size[i] > bs
                    or (comp_size[i] == bs and comp_cyclen[i] > bc)
                    or (comp_size[i] == bs and comp_cyclen[i] == bc and comp_minlab[i] < bm)):
                best = i
                bs = comp_size[i]
                bc = comp_cyclen[i]
                bm = comp_minlab[i]

    out_row[0] = l1
    out_row[1] = l2
    out_row[2] = l3
    out_row[3] = l4
    out_row[4] = total_cyc
    out_row[5] = cid
    out_row[6] = 1 if comp_cyclen[best] == l1 else 0


cdef class _Scratch:
    cdef i64 n
    cdef cnp.ndarray indeg, stack, cyc_id, cyc_len, cyc_first, parent
    cdef cnp.ndarray comp_size, comp_cyclen, comp_minlab, removed

    def __cinit__(self, i64 n):
        self.n = n
        self.indeg = np.empty(n, dtype=np.int64)
        self.stack = np.empty(n, dtype=np.int64)
        self.cyc_id = np.empty(n, dtype=np.int64)
        self.cyc_len = np.empty(n, dtype=np.int64)
        self.cyc_first = np.empty(n, dtype=np.int64)
        self.parent = np.empty(n, dtype=np.int64)
        self.comp_size = np.empty(n, dtype=np.int64)
        self.comp_cyclen = np.empty(n, dtype=np.int64)
        self.comp_minlab = np.empty(n, dtype=np.int64)
        self.removed = np.empty(n, dtype=np.uint8)


def batch_stats(images):
    """Per-row stats of 0-based mappings: int64 (rows, 7) of
    [lam1, lam2, lam3, lam4, cyclic points, components, flag]."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] imgs = np.ascontiguousarray(images, dtype=np.int64)
    cdef Py_ssize_t m = imgs.shape[0]
    cdef i64 n = imgs.shape[1]
    cdef cnp.ndarray[i64, ndim=2, mode="c"] out = np.empty((m, 7), dtype=np.int64)
    cdef _Scratch s = _Scratch(n)
    cdef i64* indeg = <i64*> cnp.PyArray_DATA(s.indeg)
    cdef i64* stack = <i64*> cnp.PyArray_DATA(s.stack)
    cdef i64* cyc_id = <i64*> cnp.PyArray_DATA(s.cyc_id)
    cdef i64* cyc_len = <i64*> cnp.PyArray_DATA(s.cyc_len)
    cdef i64* cyc_first = <i64*> cnp.PyArray_DATA(s.cyc_first)
    cdef i64* parent = <i64*> cnp.PyArray_DATA(s.parent)
    cdef i64* comp_size = <i64*> cnp.PyArray_DATA(s.comp_size)
    cdef i64* comp_cyclen = <i64*> cnp.PyArray_DATA(s.comp_cyclen)
    cdef i64* comp_minlab = <i64*> cnp.PyArray_DATA(s.comp_minlab)
    cdef unsigned char* removed = <unsigned char*> cnp.PyArray_DATA(s.removed)
    cdef i64* img_ptr = <i64*> cnp.PyArray_DATA(imgs)
    cdef i64* out_ptr = <i64*> cnp.PyArray_DATA(out)
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            _analyze_row(img_ptr + i * n, n,
                         indeg, stack, removed,
                         cyc_id, cyc_len, cyc_first,
                         parent, comp_size, comp_cyclen, comp_minlab,
                         out_ptr + i * 7)
    return out


def analyze_arrays(image):
    """Full digest of one mapping: (cycle lengths desc, component sizes desc, flag)."""
    cdef cnp.ndarray[i64, ndim=1, mode="c"] img = np.ascontiguousarray(image, dtype=np.int64)
    cdef i64 n = img.shape[0]
    cdef _Scratch s = _Scratch(n)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] out = np.empty(7, dtype=np.int64)
    _analyze_row(<i64*> cnp.PyArray_DATA(img), n,
                 <i64*> cnp.PyArray_DATA(s.indeg), <i64*> cnp.PyArray_DATA(s.stack),
                 <unsigned char*> cnp.PyArray_DATA(s.removed),
                 <i64*> cnp.PyArray_DATA(s.cyc_id), <i64*> cnp.PyArray_DATA(s.cyc_len),
                 <i64*> cnp.PyArray_DATA(s.cyc_first),
                 <i64*> cnp.PyArray_DATA(s.parent), <i64*> cnp.PyArray_DATA(s.comp_size),
                 <i64*> cnp.PyArray_DATA(s.comp_cyclen), <i64*> cnp.PyArray_DATA(s.comp_minlab),
                 <i64*> cnp.PyArray_DATA(out))
    cdef i64 m = out[5]
    lengths = np.sort(np.asarray(s.cyc_len[:m]))[::-1].copy()
    sizes_all = np.asarray(s.comp_size)
    parents = np.asarray(s.parent)
    roots = parents == np.arange(n)
    sizes = np.sort(sizes_all[roots])[::-1].copy()
    return lengths, sizes, int(out[6])


def enumerate_tally(int n, first=None):
    """Exact tallies over all n^n mappings (or the slice image[0] = first)
    by mixed-radix odometer iteration; nothing is stored per mapping."""
    cdef cnp.ndarray[i64, ndim=2, mode="c"] counts = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=4, mode="c"] joint = np.zeros((n + 1, n + 1, n + 1, n + 1), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1, mode="c"] digits = np.zeros(n, dtype=np.int64)
    cdef _Scratch s = _Scratch(n)
    cdef i64* dig = <i64*> cnp.PyArray_DATA(digits)
    cdef i64* cnt = <i64*> cnp.PyArray_DATA(counts)
    cdef i64* jnt = <i64*> cnp.PyArray_DATA(joint)
    cdef i64* indeg = <i64*> cnp.PyArray_DATA(s.indeg)
    cdef i64* stack = <i64*> cnp.PyArray_DATA(s.stack)
    cdef i64* cyc_id = <i64*> cnp.PyArray_DATA(s.cyc_id)
    cdef i64* cyc_len = <i64*> cnp.PyArray_DATA(s.cyc_len)
    cdef i64* cyc_first = <i64*> cnp.PyArray_DATA(s.cyc_first)
    cdef i64* parent = <i64*> cnp.PyArray_DATA(s.parent)
    cdef i64* comp_size = <i64*> cnp.PyArray_DATA(s.comp_size)
    cdef i64* comp_cyclen = <i64*> cnp.PyArray_DATA(s.comp_cyclen)
    cdef i64* comp_minlab = <i64*> cnp.PyArray_DATA(s.comp_minlab)
    cdef unsigned char* removed = <unsigned char*> cnp.PyArray_DATA(s.removed)
    cdef i64 out_row[7]
    cdef i64 connected = 0
    cdef i64 lowest = 1 if first is not None else 0
    cdef i64 np1 = n + 1
    cdef i64 pos, idx
    cdef bint running = True
    if first is not None:
        dig[0] = <i64> first
    with nogil:
        while running:
            _analyze_row(dig, n, indeg, stack, removed,
                         cyc_id, cyc_len, cyc_first,
                         parent, comp_size, comp_cyclen, comp_minlab,
                         out_row)
            cnt[out_row[5] * np1 + out_row[4]] += 1
            idx = ((out_row[5] * np1 + out_row[4]) * np1 + out_row[0]) * np1 + out_row[1]
            jnt[idx] += 1
            if out_row[5] == 1:
                connected += 1
            pos = n - 1
            while pos >= lowest:
                dig[pos] += 1
                if dig[pos] < n:
                    break
                dig[pos] = 0
                pos -= 1
            if pos < lowest:
                running = False
    return counts, joint, int(connected)
