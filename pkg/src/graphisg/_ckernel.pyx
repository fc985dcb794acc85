# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: composition table fill and all-triples associativity.

Element data arrives packed: subgraph masks as 64-bit words, vertex/edge maps
as int8 rows (-1 off the domain), paths padded with -1. The identity key of a
composite is the byte image of exactly those rows, so results are matched to
element indices with one dict lookup per pair.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

ctypedef unsigned long long u64
ctypedef signed char i8


def build_table_packed(int kind, int nv, int ne,
                       i8[::1] eu, i8[::1] ew, int root,
                       u64[::1] dv, u64[::1] de, u64[::1] cv, u64[::1] ce,
                       i8[:, ::1] vmaps, i8[:, ::1] emaps,
                       i8[:, ::1] pd, i8[:, ::1] pc, int[::1] plen,
                       dict index, int[:, ::1] table):
    """kind: 0 = plain overlap, 1 = trim to root component, 2 = path prefix.

    table[i, j] receives the index of elements[i] composed after elements[j];
    returns the (i, j) pairs whose composite key is not in `index`.
    """
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t i, j
    cdef int a, k, t, mid, L
    cdef u64 wv, we, comp, prev
    cdef i8 inv_j[64]
    cdef unsigned char buf[320]
    cdef int keylen = nv + ne
    if kind == 2:
        keylen += 2 * nv
    cdef list missing = []
    cdef object val
    cdef bytes key

    for j in range(n):
        if kind == 2:
            for a in range(nv):
                inv_j[a] = -1
            for a in range(nv):
                if dv[j] >> a & 1:
                    inv_j[vmaps[j, a]] = <i8> a
        for i in range(n):
            wv = cv[j] & dv[i]
            L = 0
            if kind == 0:
                we = ce[j] & de[i]
            elif kind == 1:
                comp = (<u64> 1) << root
                prev = 0
                while prev != comp:
                    prev = comp
                    for k in range(ne):
                        if (wv >> eu[k] & 1) and (wv >> ew[k] & 1):
                            if comp >> eu[k] & 1:
                                comp |= (<u64> 1) << ew[k]
                            if comp >> ew[k] & 1:
                                comp |= (<u64> 1) << eu[k]
                wv = comp
                we = 0
                for k in range(ne):
                    if (wv >> eu[k] & 1) and (wv >> ew[k] & 1):
                        we |= (<u64> 1) << k
            else:
                while L < plen[j] and L < plen[i] and pc[j, L] == pd[i, L]:
                    L += 1
                wv = 0
                for t in range(L):
                    wv |= (<u64> 1) << pc[j, t]
                we = 0
                for k in range(ne):
                    if (wv >> eu[k] & 1) and (wv >> ew[k] & 1):
                        we |= (<u64> 1) << k
            for a in range(nv):
                buf[a] = 0xFF
                if dv[j] >> a & 1:
                    mid = vmaps[j, a]
                    if wv >> mid & 1:
                        buf[a] = <unsigned char> vmaps[i, mid]
            for k in range(ne):
                buf[nv + k] = 0xFF
                if de[j] >> k & 1:
                    mid = emaps[j, k]
                    if we >> mid & 1:
                        buf[nv + k] = <unsigned char> emaps[i, mid]
            if kind == 2:
                for t in range(nv):
                    buf[nv + ne + t] = 0xFF
                    buf[nv + ne + nv + t] = 0xFF
                for t in range(L):
                    buf[nv + ne + t] = <unsigned char> inv_j[pc[j, t]]
                    buf[nv + ne + nv + t] = <unsigned char> vmaps[i, pc[j, t]]
            key = PyBytes_FromStringAndSize(<char*> buf, keylen)
            val = index.get(key)
            if val is None:
                table[i, j] = -1
                missing.append((i, j))
            else:
                table[i, j] = <int> val
    return missing


def assoc_witness(int[:, ::1] t):
    """First (i, j, k) with (ij)k != i(jk), or None after the full n^3 scan."""
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t i, j, k
    cdef int tij
    for i in range(n):
        for j in range(n):
            tij = t[i, j]
            for k in range(n):
                if t[tij, k] != t[i, t[j, k]]:
                    return (i, j, k)
    return None
