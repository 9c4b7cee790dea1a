# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled refinement kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport int32_t, int64_t

cnp.import_array()

BACKEND = "cython"


cdef void _sort_keys(int64_t* a, int64_t* tmp, int64_t length) noexcept nogil:
    """Sort non-negative keys: insertion sort for short runs, LSD radix otherwise."""
    cdef int64_t i, j, x, mx, shift, d
    cdef int64_t count[257]
    cdef int64_t* src = a
    cdef int64_t* dst = tmp
    cdef int64_t* sw
    if length <= 32:
        for i in range(1, length):
            x = a[i]
            j = i - 1
            while j >= 0 and a[j] > x:
                a[j + 1] = a[j]
                j -= 1
            a[j + 1] = x
        return
    mx = 0
    for i in range(length):
        if a[i] > mx:
            mx = a[i]
    shift = 0
    while (mx >> shift) > 0:
        for d in range(257):
            count[d] = 0
        for i in range(length):
            count[((src[i] >> shift) & 255) + 1] += 1
        for d in range(256):
            count[d + 1] += count[d]
        for i in range(length):
            d = (src[i] >> shift) & 255
            dst[count[d]] = src[i]
            count[d] += 1
        sw = src; src = dst; dst = sw
        shift += 8
    if src != a:
        memcpy(a, src, length * sizeof(int64_t))


cdef inline int _cmp_keys(int64_t v, int64_t w, const int64_t* col,
                          const int64_t* ptr, const int64_t* codes) noexcept nogil:
    cdef int64_t i, j, iend, jend
    if col[v] != col[w]:
        return -1 if col[v] < col[w] else 1
    i = ptr[v]; iend = ptr[v + 1]
    j = ptr[w]; jend = ptr[w + 1]
    while i < iend and j < jend:
        if codes[i] != codes[j]:
            return -1 if codes[i] < codes[j] else 1
        i += 1
        j += 1
    if i < iend:
        return 1
    if j < jend:
        return -1
    return 0


cdef void _merge_sort(int64_t* a, int64_t* tmp, int64_t n, const int64_t* col,
                      const int64_t* ptr, const int64_t* codes) noexcept nogil:
    cdef int64_t width = 1, lo, mid, hi, i, j, k
    cdef int64_t* src = a
    cdef int64_t* dst = tmp
    cdef int64_t* sw
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            i = lo; j = mid; k = lo
            while i < mid and j < hi:
                if _cmp_keys(src[j], src[i], col, ptr, codes) < 0:
                    dst[k] = src[j]; j += 1
                else:
                    dst[k] = src[i]; i += 1
                k += 1
            while i < mid:
                dst[k] = src[i]; i += 1; k += 1
            while j < hi:
                dst[k] = src[j]; j += 1; k += 1
            lo = hi
        sw = src; src = dst; dst = sw
        width *= 2
    if src != a:
        memcpy(a, src, n * sizeof(int64_t))


def cr_round(const int64_t[::1] indptr, const int64_t[::1] indices,
             const int64_t[::1] arc_out, const int64_t[::1] arc_in,
             const int64_t[::1] colors, int64_t n_arc):
    cdef int64_t n = colors.shape[0]
    cdef int64_t narcs = indices.shape[0]
    cdef int64_t v, e, c
    cdef cnp.ndarray[int64_t, ndim=1] codes_a = np.empty(narcs, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] order_a = np.arange(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] tmp_a = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] new_a = np.empty(n, dtype=np.int64)
    cdef int64_t* codes = <int64_t*>codes_a.data
    cdef int64_t* order = <int64_t*>order_a.data
    cdef int64_t* newc = <int64_t*>new_a.data
    cdef cnp.ndarray[int64_t, ndim=1] rowtmp_a = np.empty(narcs + 1, dtype=np.int64)
    cdef int64_t* rowtmp = <int64_t*>rowtmp_a.data
    with nogil:
        for e in range(narcs):
            codes[e] = (colors[indices[e]] * n_arc + arc_out[e]) * n_arc + arc_in[e]
        for v in range(n):
            if indptr[v + 1] - indptr[v] > 1:
                _sort_keys(&codes[indptr[v]], rowtmp, indptr[v + 1] - indptr[v])
        _merge_sort(order, <int64_t*>tmp_a.data, n, &colors[0] if n else NULL, &indptr[0], codes)
        c = -1
        for v in range(n):
            if v == 0 or _cmp_keys(order[v - 1], order[v], &colors[0], &indptr[0], codes) != 0:
                c += 1
            newc[order[v]] = c
    return new_a, c + 1


cdef struct VRec:
    int32_t cell
    int32_t cnt
    int32_t pos
    int32_t pad


cdef inline void _sort_by_count(int32_t* lab, VRec* rec, int64_t lo, int64_t hi,
                                int64_t* seg, int64_t* tmp, int64_t n) noexcept nogil:
    """Order lab[lo:hi] by ascending count; insertion sort for short runs."""
    cdef int64_t i, j, x, kx
    if hi - lo <= 24:
        for i in range(lo + 1, hi):
            x = lab[i]
            kx = rec[x].cnt
            j = i - 1
            while j >= lo and rec[lab[j]].cnt > kx:
                lab[j + 1] = lab[j]
                j -= 1
            lab[j + 1] = <int32_t>x
    else:
        for i in range(lo, hi):
            seg[i - lo] = <int64_t>rec[lab[i]].cnt * n + lab[i]
        _sort_keys(seg, tmp, hi - lo)
        for i in range(lo, hi):
            lab[i] = <int32_t>(seg[i - lo] % n)
    for i in range(lo, hi):
        rec[lab[i]].pos = <int32_t>i


cdef inline int64_t _split_cell(int32_t* lab, VRec* rec, char* single, int32_t* end, char* inq,
                                int32_t* queue, int64_t* qhead, int64_t* qlen,
                                int32_t* fstart, int64_t* seg, int64_t n,
                                int64_t c, int64_t m) noexcept nogil:
    """Split cell [c, end[c]) whose touched tail starts at m; returns #fragments."""
    cdef int64_t e_ = end[c], nf = 0, i, j, a, b, prev, skip, best
    if e_ - m > 1:
        _sort_by_count(lab, rec, m, e_, seg, seg + n, n)
    if m > c:
        fstart[nf] = <int32_t>c
        nf += 1
    prev = -1
    for i in range(m, e_):
        if rec[lab[i]].cnt != prev:
            fstart[nf] = <int32_t>i
            nf += 1
            prev = rec[lab[i]].cnt
    if nf == 1:
        return 1
    fstart[nf] = <int32_t>e_
    for i in range(nf):
        a = fstart[i]
        b = fstart[i + 1]
        end[a] = <int32_t>b
        if a != c:
            for j in range(a, b):
                rec[lab[j]].cell = <int32_t>a
        if b - a == 1:
            single[lab[a]] = 1
    if inq[c]:
        skip = c
    else:
        skip = fstart[0]
        best = fstart[1] - fstart[0]
        for i in range(1, nf):
            if fstart[i + 1] - fstart[i] > best:
                best = fstart[i + 1] - fstart[i]
                skip = fstart[i]
    for i in range(nf):
        a = fstart[i]
        if a != skip and not inq[a]:
            queue[(qhead[0] + qlen[0]) % n] = <int32_t>a
            qlen[0] += 1
            inq[a] = 1
    return nf


cdef inline void _touch(int64_t x, int32_t* lab, VRec* rec, int32_t* end, int32_t* mark,
                        int32_t* touched, int64_t* nt, int64_t* tcells, int64_t* ntc) noexcept nogil:
    cdef int64_t c, m, y, p
    if rec[x].cnt == 0:
        touched[nt[0]] = <int32_t>x
        nt[0] += 1
        c = rec[x].cell
        if mark[c] == 0:
            mark[c] = end[c]
            tcells[ntc[0]] = c
            ntc[0] += 1
        m = mark[c] - 1
        y = lab[m]
        p = rec[x].pos
        lab[p] = <int32_t>y
        lab[m] = <int32_t>x
        rec[y].pos = <int32_t>p
        rec[x].pos = <int32_t>m
        mark[c] = <int32_t>m
    rec[x].cnt += 1


def equitable(const int64_t[::1] indptr, const int64_t[::1] indices,
              const int64_t[::1] label, int64_t n_labels, const int64_t[::1] colors):
    cdef int64_t n = colors.shape[0]
    cdef int64_t narcs = indices.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n >= 2 ** 31 or narcs >= 2 ** 31:
        raise ValueError("graph too large for the compiled kernel")
    cdef cnp.ndarray[int32_t, ndim=1] lab_a = np.lexsort((np.arange(n), np.asarray(colors))).astype(np.int32)
    cdef cnp.ndarray[int32_t, ndim=1] ptr_a = np.asarray(indptr, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=1] ind_a = np.asarray(indices, dtype=np.int32)
    cdef int32_t* lab = <int32_t*>lab_a.data
    cdef int32_t* ptr = <int32_t*>ptr_a.data
    cdef int32_t* ind = <int32_t*>ind_a.data
    cdef VRec* rec = <VRec*>malloc(n * sizeof(VRec))
    cdef int32_t* end = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    cdef int32_t* mark = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    cdef char* inq = <char*>malloc(n + 1)
    cdef char* single = <char*>malloc(n)
    cdef int32_t* queue = <int32_t*>malloc(n * sizeof(int32_t))   # ring buffer, at most n cells
    cdef int32_t* members = <int32_t*>malloc(n * sizeof(int32_t))
    cdef int32_t* touched = <int32_t*>malloc(n * sizeof(int32_t))
    cdef int64_t* tcells = <int64_t*>malloc(n * sizeof(int64_t))
    cdef int64_t* seg = <int64_t*>malloc(2 * n * sizeof(int64_t))
    cdef int32_t* fstart = <int32_t*>malloc((n + 1) * sizeof(int32_t))
    cdef int64_t* arcbuf = <int64_t*>malloc(2 * (narcs + 1) * sizeof(int64_t)) if n_labels > 1 else NULL
    cdef int64_t qhead = 0, qlen = 0, start, i, j, k, s, nm, na, g0, g1, L
    cdef int64_t w, e, x, c, nt, ntc, r
    cdef cnp.ndarray[int64_t, ndim=1] out_a = np.empty(n, dtype=np.int64)
    cdef int64_t* out = <int64_t*>out_a.data
    try:
        with nogil:
            for i in range(n):
                rec[lab[i]].pos = <int32_t>i
                rec[i].cnt = 0
                single[i] = 0
            for i in range(n + 1):
                mark[i] = 0
                inq[i] = 0
            start = 0
            for i in range(1, n + 1):
                if i == n or colors[lab[i]] != colors[lab[start]]:
                    end[start] = <int32_t>i
                    if i - start == 1:
                        single[lab[start]] = 1
                    for j in range(start, i):
                        rec[lab[j]].cell = <int32_t>start
                    queue[(qhead + qlen) % n] = <int32_t>start
                    qlen += 1
                    inq[start] = 1
                    start = i

            while qlen > 0:
                s = queue[qhead]
                qhead = (qhead + 1) % n
                qlen -= 1
                inq[s] = 0
                nm = end[s] - s
                memcpy(members, &lab[s], nm * sizeof(int32_t))
                if n_labels == 1:
                    nt = 0
                    ntc = 0
                    for i in range(nm):
                        w = members[i]
                        for e in range(ptr[w], ptr[w + 1]):
                            if single[ind[e]]:
                                continue
                            _touch(ind[e], lab, rec, end, mark, touched, &nt, tcells, &ntc)
                    if ntc > 1:
                        _sort_keys(tcells, seg, ntc)
                    for k in range(ntc):
                        c = tcells[k]
                        j = mark[c]
                        mark[c] = 0
                        _split_cell(lab, rec, single, end, inq, queue, &qhead, &qlen, fstart, seg, n, c, j)
                    for j in range(nt):
                        rec[touched[j]].cnt = 0
                    continue
                # several arc labels: split once per label, labels in increasing order
                na = 0
                for i in range(nm):
                    w = members[i]
                    for e in range(ptr[w], ptr[w + 1]):
                        arcbuf[na] = label[e] * n + ind[e]
                        na += 1
                if na > 1:
                    _sort_keys(arcbuf, arcbuf + narcs + 1, na)
                g0 = 0
                while g0 < na:
                    L = arcbuf[g0] // n
                    g1 = g0 + 1
                    while g1 < na and arcbuf[g1] // n == L:
                        g1 += 1
                    nt = 0
                    ntc = 0
                    for j in range(g0, g1):
                        if single[arcbuf[j] % n]:
                            continue
                        _touch(arcbuf[j] % n, lab, rec, end, mark, touched, &nt, tcells, &ntc)
                    if ntc > 1:
                        _sort_keys(tcells, seg, ntc)
                    for k in range(ntc):
                        c = tcells[k]
                        j = mark[c]
                        mark[c] = 0
                        _split_cell(lab, rec, single, end, inq, queue, &qhead, &qlen, fstart, seg, n, c, j)
                    for j in range(nt):
                        rec[touched[j]].cnt = 0
                    g0 = g1

            # dense canonical ids: rank of each cell start among all starts
            for i in range(n):
                seg[i] = 0
            for i in range(n):
                seg[rec[i].cell] = 1
            r = -1
            for i in range(n):
                r += seg[i]
                seg[i] = r
            for i in range(n):
                out[i] = seg[rec[i].cell]
    finally:
        free(rec); free(end); free(mark); free(inq); free(single); free(queue); free(members)
        free(touched); free(tcells); free(seg); free(fstart)
        if arcbuf != NULL:
            free(arcbuf)
    return out_a
