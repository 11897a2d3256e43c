# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline double _uniform(uint64_t seed, uint64_t counter) nogil:
    cdef uint64_t z = seed + (counter + 1) * GAMMA
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    z = z ^ (z >> 31)
    return <double>(z >> 11) * INV_2_53


def ge_chain(seed, Py_ssize_t length, double alpha, double beta, double eps0, double eps1):
    cdef uint64_t s = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    erased_arr = np.empty(length, dtype=np.uint8)
    bad_arr = np.empty(length, dtype=np.uint8)
    cdef uint8_t[::1] erased = erased_arr
    cdef uint8_t[::1] bad = bad_arr
    cdef Py_ssize_t t
    cdef int state = 0
    cdef double u
    with nogil:
        for t in range(length):
            bad[t] = state
            u = _uniform(s, 2 * <uint64_t>t)
            erased[t] = u < (eps1 if state else eps0)
            u = _uniform(s, 2 * <uint64_t>t + 1)
            if state == 0:
                if u < alpha:
                    state = 1
            else:
                if u < beta:
                    state = 0
    return erased_arr, bad_arr


cdef inline int64_t _powmod(int64_t b, int64_t e, int64_t m) nogil:
    cdef int64_t r = 1
    b %= m
    while e > 0:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


def prefix_recovery(columns, y, erased, deadlines, pending, int64_t p, bint scan_all=True):
    cdef int64_t[:, ::1] cols = np.ascontiguousarray(columns, dtype=np.int64)
    cdef int64_t[::1] yv = np.ascontiguousarray(y, dtype=np.int64)
    cdef uint8_t[::1] er = np.ascontiguousarray(erased, dtype=np.uint8)
    cdef int64_t[::1] dl = np.ascontiguousarray(deadlines, dtype=np.int64)
    cdef uint8_t[::1] pend = np.ascontiguousarray(pending, dtype=np.uint8)
    cdef Py_ssize_t k = dl.shape[0]
    cdef Py_ssize_t n = yv.shape[0]
    basis_arr = np.zeros((k, k + 1), dtype=np.int64)
    cdef int64_t[:, ::1] basis = basis_arr
    has_arr = np.zeros(k, dtype=np.uint8)
    cdef uint8_t[::1] has = has_arr
    found_arr = np.full(k, -1, dtype=np.int64)
    cdef int64_t[::1] found = found_arr
    val_arr = np.zeros(k, dtype=np.int64)
    cdef int64_t[::1] vals = val_arr
    wait_arr = np.zeros(k, dtype=np.uint8)
    cdef uint8_t[::1] waiting = wait_arr
    v_arr = np.zeros(k + 1, dtype=np.int64)
    cdef int64_t[::1] v = v_arr
    cdef Py_ssize_t i, j, t, r, piv, last, nwait = 0
    cdef int64_t f, g
    cdef bint consistent = True, unit
    for i in range(k):
        if pend[i]:
            waiting[i] = 1
            nwait += 1
    last = n - 1
    if not scan_all:
        last = -1
        for i in range(k):
            if waiting[i] and dl[i] > last:
                last = dl[i]
    with nogil:
        for j in range(last + 1):
            if nwait == 0 and not scan_all:
                break
            if er[j]:
                continue
            for t in range(k):
                v[t] = ((cols[j, t] % p) + p) % p
            v[k] = ((yv[j] % p) + p) % p
            for r in range(k):
                if has[r] and v[r] != 0:
                    f = v[r]
                    for t in range(k + 1):
                        if basis[r, t] != 0:
                            v[t] = (v[t] - f * basis[r, t]) % p
                            if v[t] < 0:
                                v[t] += p
            piv = -1
            for t in range(k):
                if v[t] != 0:
                    piv = t
                    break
            if piv < 0:
                if v[k] != 0:
                    consistent = False
                continue
            f = _powmod(v[piv], p - 2, p)
            for t in range(k + 1):
                v[t] = (v[t] * f) % p
            for r in range(k):
                if has[r] and basis[r, piv] != 0:
                    g = basis[r, piv]
                    for t in range(k + 1):
                        if v[t] != 0:
                            basis[r, t] = (basis[r, t] - g * v[t]) % p
                            if basis[r, t] < 0:
                                basis[r, t] += p
            for t in range(k + 1):
                basis[piv, t] = v[t]
            has[piv] = 1
            if nwait > 0:
                for i in range(k):
                    if not waiting[i]:
                        continue
                    if dl[i] < j:
                        waiting[i] = 0
                        nwait -= 1
                        continue
                    if has[i]:
                        unit = True
                        for t in range(k):
                            if t != i and basis[i, t] != 0:
                                unit = False
                                break
                        if unit:
                            found[i] = j
                            vals[i] = basis[i, k]
                            waiting[i] = 0
                            nwait -= 1
    return [int(a) for a in found_arr], [int(a) for a in val_arr], bool(consistent)
