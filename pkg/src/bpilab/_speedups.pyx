# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: stabilizer-chain sifting, conjugacy orbits, class constants.

Signatures mirror ``bpilab._fallback``.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


cdef inline i64 _sift_one(const i32[:] perm, i32[:] work, i32[:] tmp,
                          const i64[:] base, const i32[:, :] pos,
                          const i32[:, :, :] tinv, const i64[:] strides) noexcept nogil:
    cdef Py_ssize_t n = perm.shape[0]
    cdef Py_ssize_t level, x
    cdef i64 rank = 0
    cdef i32 idx
    for x in range(n):
        work[x] = perm[x]
    for level in range(base.shape[0]):
        idx = pos[level, work[base[level]]]
        if idx < 0:
            return -1
        rank += idx * strides[level]
        for x in range(n):
            tmp[x] = tinv[level, idx, work[x]]
        for x in range(n):
            work[x] = tmp[x]
    for x in range(n):
        if work[x] != x:
            return -1
    return rank


def sift_ranks(perms, base, pos, tinv, strides):
    cdef const i32[:, :] P = np.ascontiguousarray(perms, dtype=np.int32)
    cdef const i64[:] B = np.ascontiguousarray(base, dtype=np.int64)
    cdef const i32[:, :] POS = np.ascontiguousarray(pos, dtype=np.int32)
    cdef const i32[:, :, :] TI = np.ascontiguousarray(tinv, dtype=np.int32)
    cdef const i64[:] S = np.ascontiguousarray(strides, dtype=np.int64)
    cdef Py_ssize_t m = P.shape[0], n = P.shape[1], i
    out = np.empty(m, dtype=np.int64)
    cdef i64[:] O = out
    cdef i32[:] work = np.empty(n, dtype=np.int32)
    cdef i32[:] tmp = np.empty(n, dtype=np.int32)
    with nogil:
        for i in range(m):
            O[i] = _sift_one(P[i], work, tmp, B, POS, TI, S)
    return out


def conjugacy_class_ids(elements, gens, base, pos, tinv, strides):
    cdef const i32[:, :] E = np.ascontiguousarray(elements, dtype=np.int32)
    cdef const i32[:, :] G = np.ascontiguousarray(np.asarray(gens, dtype=np.int32).reshape(-1, E.shape[1]))
    cdef i32[:, :] GI = np.ascontiguousarray(np.argsort(np.asarray(G), axis=1).astype(np.int32))
    cdef const i64[:] B = np.ascontiguousarray(base, dtype=np.int64)
    cdef const i32[:, :] POS = np.ascontiguousarray(pos, dtype=np.int32)
    cdef const i32[:, :, :] TI = np.ascontiguousarray(tinv, dtype=np.int32)
    cdef const i64[:] S = np.ascontiguousarray(strides, dtype=np.int64)
    cdef Py_ssize_t total = E.shape[0], n = E.shape[1], ngens = G.shape[0]
    ids_arr = np.full(total, -1, dtype=np.int64)
    cdef i64[:] ids = ids_arr
    cdef i64[:] queue = np.empty(total, dtype=np.int64)
    cdef i32[:] conj = np.empty(n, dtype=np.int32)
    cdef i32[:] work = np.empty(n, dtype=np.int32)
    cdef i32[:] tmp = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t start, head, tail, gi, x
    cdef i64 label = 0, cur, r
    with nogil:
        for start in range(total):
            if ids[start] >= 0:
                continue
            ids[start] = label
            queue[0] = start
            head = 0
            tail = 1
            while head < tail:
                cur = queue[head]
                head += 1
                for gi in range(ngens):
                    for x in range(n):
                        conj[x] = G[gi, E[cur, GI[gi, x]]]
                    r = _sift_one(conj, work, tmp, B, POS, TI, S)
                    if ids[r] < 0:
                        ids[r] = label
                        queue[tail] = r
                        tail += 1
            label += 1
    return ids_arr


def structure_constants(elements, inverses, class_ids, reps, nclasses, base, pos, tinv, strides):
    cdef const i32[:, :] E = np.ascontiguousarray(elements, dtype=np.int32)
    cdef const i64[:] INV = np.ascontiguousarray(inverses, dtype=np.int64)
    cdef const i64[:] CID = np.ascontiguousarray(class_ids, dtype=np.int64)
    cdef const i64[:] REP = np.ascontiguousarray(reps, dtype=np.int64)
    cdef const i64[:] B = np.ascontiguousarray(base, dtype=np.int64)
    cdef const i32[:, :] POS = np.ascontiguousarray(pos, dtype=np.int32)
    cdef const i32[:, :, :] TI = np.ascontiguousarray(tinv, dtype=np.int32)
    cdef const i64[:] S = np.ascontiguousarray(strides, dtype=np.int64)
    cdef Py_ssize_t r = nclasses, total = E.shape[0], n = E.shape[1]
    out_arr = np.zeros((r, r, r), dtype=np.int64)
    cdef i64[:, :, :] out = out_arr
    cdef i32[:] prod = np.empty(n, dtype=np.int32)
    cdef i32[:] work = np.empty(n, dtype=np.int32)
    cdef i32[:] tmp = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t y, k, x
    cdef i64 j, yinv, z, rank
    with nogil:
        for y in range(total):
            j = CID[y]
            yinv = INV[y]
            for k in range(r):
                z = REP[k]
                for x in range(n):
                    prod[x] = E[yinv, E[z, x]]
                rank = _sift_one(prod, work, tmp, B, POS, TI, S)
                out[CID[rank], j, k] += 1
    return out_arr
