# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; same contracts as the functions in ``_pykernels``."""
import numpy as np
cimport numpy as cnp


def close_rounds(rounds_in, indptr_in, partner_in, result_in):
    cdef cnp.int32_t[::1] rounds = np.array(rounds_in, dtype=np.int32)
    cdef cnp.int64_t[::1] indptr = np.asarray(indptr_in, dtype=np.int64)
    cdef cnp.int32_t[::1] partner = np.asarray(partner_in, dtype=np.int32)
    cdef cnp.int32_t[::1] result = np.asarray(result_in, dtype=np.int32)
    cdef Py_ssize_t n = rounds.shape[0]
    cdef cnp.int32_t[::1] frontier = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] nxt = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t nf = 0, nn, i, j, e
    cdef int k = 0
    cdef cnp.int32_t o, r, ro
    for i in range(n):
        if rounds[i] == 0:
            frontier[nf] = i
            nf += 1
    while nf > 0:
        nn = 0
        for i in range(nf):
            e = frontier[i]
            for j in range(indptr[e], indptr[e + 1]):
                o = partner[j]
                ro = rounds[o]
                if ro >= 0 and ro <= k:
                    r = result[j]
                    if rounds[r] == -1:
                        rounds[r] = k + 1
                        nxt[nn] = r
                        nn += 1
        frontier, nxt = nxt, frontier
        nf = nn
        k += 1
    return list(rounds)


def _groups(Py_ssize_t n_keys, key):
    cdef cnp.int64_t[::1] ptr = np.zeros(n_keys + 1, dtype=np.int64)
    cdef cnp.int32_t[::1] k = np.asarray(key, dtype=np.int32)
    cdef Py_ssize_t i, n = k.shape[0]
    for i in range(n):
        ptr[k[i] + 1] += 1
    for i in range(n_keys):
        ptr[i + 1] += ptr[i]
    fill = np.array(ptr[:n_keys], dtype=np.int64)
    cdef cnp.int64_t[::1] f = fill
    cdef cnp.int32_t[::1] items = np.empty(n, dtype=np.int32)
    for i in range(n):
        items[f[k[i]]] = i
        f[k[i]] += 1
    return ptr, items


def assoc_violations(Py_ssize_t n, table_in, s_in, t_in, Py_ssize_t n_keys):
    cdef cnp.int32_t[::1] table = np.asarray(table_in, dtype=np.int32)
    cdef cnp.int32_t[::1] t = np.asarray(t_in, dtype=np.int32)
    ptr_, items_ = _groups(n_keys, s_in)
    cdef cnp.int64_t[::1] ptr = ptr_
    cdef cnp.int32_t[::1] items = items_
    cdef Py_ssize_t f, jg, jh
    cdef cnp.int32_t g, h, gf, hg, lhs, rhs
    out = []
    for f in range(n):
        for jg in range(ptr[t[f]], ptr[t[f] + 1]):
            g = items[jg]
            gf = table[g * n + f]
            for jh in range(ptr[t[g]], ptr[t[g] + 1]):
                h = items[jh]
                hg = table[h * n + g]
                lhs = table[h * n + gf] if gf >= 0 else -1
                rhs = table[hg * n + f] if hg >= 0 else -1
                if lhs != rhs or lhs < 0:
                    out.append((h, g, f, lhs, rhs))
    return out


def interchange_violations(Py_ssize_t n, hs_in, vc_in, dom_in, cod_in, vsrc_in, vtgt_in, Py_ssize_t n_keys):
    cdef cnp.int32_t[::1] hs = np.asarray(hs_in, dtype=np.int32)
    cdef cnp.int32_t[::1] vc = np.asarray(vc_in, dtype=np.int32)
    cdef cnp.int32_t[::1] cod = np.asarray(cod_in, dtype=np.int32)
    cdef cnp.int32_t[::1] vsrc = np.asarray(vsrc_in, dtype=np.int32)
    cdef cnp.int32_t[::1] vtgt = np.asarray(vtgt_in, dtype=np.int32)
    ptr_, items_ = _groups(n_keys, dom_in)
    cdef cnp.int64_t[::1] ptr = ptr_
    cdef cnp.int32_t[::1] items = items_
    cdef Py_ssize_t psi, phi, j2, k2
    cdef cnp.int32_t bottom, psi2, phi2, s, a, b, top, lhs, rhs
    out = []
    for psi in range(n):
        for phi in range(n):
            bottom = hs[psi * n + phi]
            if bottom < 0 or vsrc[psi] != vtgt[phi]:
                continue
            for j2 in range(ptr[cod[psi]], ptr[cod[psi] + 1]):
                psi2 = items[j2]
                s = vsrc[psi2]
                a = vc[psi2 * n + psi]
                for k2 in range(ptr[cod[phi]], ptr[cod[phi] + 1]):
                    phi2 = items[k2]
                    if vtgt[phi2] != s:
                        continue
                    top = hs[psi2 * n + phi2]
                    lhs = vc[top * n + bottom] if top >= 0 else -1
                    b = vc[phi2 * n + phi]
                    rhs = hs[a * n + b] if a >= 0 and b >= 0 else -1
                    if lhs != rhs or lhs < 0:
                        out.append((psi2, phi2, psi, phi, lhs, rhs))
    return out
